"""Equivalent-channel power and block-statistic moments, analytic vs sampled.

Builds one surface-assisted scenario, checks the closed-form channel
variance against a Monte-Carlo estimate, then compares the predicted
means and the three variance flavours of the block power T with sample
moments under both hypotheses.
"""

from ris_sei.analytic import derive_stats, lemma1_variance
from ris_sei.model import (
    ChannelParams,
    Hypothesis,
    RisConfig,
    ScenarioConfig,
    VarianceMode,
)
from ris_sei.montecarlo import equivalent_channel_power, t_samples

scenario = ScenarioConfig(
    ris=RisConfig(8, (1.0,) * 8, (0.0,) * 8),
    channel=ChannelParams(var_ar=0.3, var_rb=0.3, var_a=1.0, var_e=0.4, noise_var=0.6),
    samples_per_block=200,
    seed=42,
)

analytic = lemma1_variance(scenario.ris, scenario.channel)
estimate, se = equivalent_channel_power(scenario.ris, scenario.channel, 200_000, seed=42)
print("equivalent channel power E[|h_eq|^2]")
print(f"  closed form  {analytic:.6f}")
print(f"  monte carlo  {estimate:.6f}  (std error {se:.6f}, z = {(estimate - analytic) / se:+.2f})")

closed = derive_stats(scenario, VarianceMode.CLOSED_FORM)
fourth = derive_stats(scenario, VarianceMode.FOURTH_MOMENT)
calibrated = derive_stats(scenario, VarianceMode.CALIBRATED, calibration_trials=10_000)

print(f"\nblock power T over L = {scenario.samples_per_block} samples, 10000 trials")
print(f"{'':14}{'mean_pred':>12}{'mean_emp':>12}{'var_closed':>12}"
      f"{'var_fourth':>12}{'var_calib':>12}{'var_emp':>12}")
for name, hyp in (("T | legit", Hypothesis.LEGITIMATE), ("T | spoof", Hypothesis.SPOOFING)):
    values = t_samples(scenario, hyp, 10_000)
    stat = closed.t_h0 if hyp is Hypothesis.LEGITIMATE else closed.t_h1
    f_stat = fourth.t_h0 if hyp is Hypothesis.LEGITIMATE else fourth.t_h1
    c_stat = calibrated.t_h0 if hyp is Hypothesis.LEGITIMATE else calibrated.t_h1
    print(f"{name:14}{stat.mean:>12.5f}{values.mean():>12.5f}{stat.variance:>12.6f}"
          f"{f_stat.variance:>12.6f}{c_stat.variance:>12.6f}{values.var(ddof=1):>12.6f}")

print("\nthe closed-form variance column understates the sampled variance;")
print("the fourth-moment and calibrated columns track it.")
