"""Thresholds and error rates for one detection scenario.

Shows the false-alarm-targeted threshold, the error-minimizing threshold,
and the resulting operating points, then verifies the advertised alarm
rates against counted Monte-Carlo verdicts.
"""

import numpy as np

from ris_sei.analytic import (
    derive_stats,
    operating_point,
    optimal_threshold,
    threshold_for_target_pf,
)
from ris_sei.model import (
    ChannelParams,
    Hypothesis,
    RisConfig,
    ScenarioConfig,
    VarianceMode,
)
from ris_sei.montecarlo import delta_samples

scenario = ScenarioConfig(
    ris=RisConfig(8, (1.0,) * 8, (0.0,) * 8),
    channel=ChannelParams(var_ar=0.25, var_rb=0.25, var_a=1.0, var_e=1.0, noise_var=0.5),
    samples_per_block=300,
    seed=7,
)
stats = derive_stats(scenario, VarianceMode.FOURTH_MOMENT)
print(f"delta | legit:  mean = {stats.dt_h0.mean:+.4f}, std = {stats.dt_h0.std:.4f}")
print(f"delta | spoof:  mean = {stats.dt_h1.mean:+.4f}, std = {stats.dt_h1.std:.4f}")

candidates = [
    ("target P_f = 0.10", threshold_for_target_pf(0.10, stats)),
    ("target P_f = 0.01", threshold_for_target_pf(0.01, stats)),
    ("minimum total error", optimal_threshold(stats)),
]
print(f"\n{'threshold rule':24}{'epsilon':>10}{'P_f':>10}{'P_d':>10}{'P_f+P_m':>10}")
for label, epsilon in candidates:
    op = operating_point(stats, epsilon)
    print(f"{label:24}{op.threshold:>10.4f}{op.p_false_alarm:>10.4f}"
          f"{op.p_detection:>10.4f}{op.p_error_total:>10.4f}")

n = 10_000
dt0 = delta_samples(scenario, Hypothesis.LEGITIMATE, n)
dt1 = delta_samples(scenario, Hypothesis.SPOOFING, n)
epsilon = optimal_threshold(stats)
print(f"\ncounted over {n} trials at the minimum-error threshold:")
print(f"  false alarms  {float(np.mean(dt0 > epsilon)):.4f}")
print(f"  detections    {float(np.mean(dt1 > epsilon)):.4f}")
