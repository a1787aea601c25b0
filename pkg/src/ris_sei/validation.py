"""Full oracle-versus-analytics validation report.

Four sections, all deterministic for a fixed seed (repr-formatted floats,
no timestamps, per-trial substreams):

  lemma          Monte-Carlo E[|h_eq|^2] against the closed form, across
                 surface-off, coherent, and tapered configurations.
  means          empirical means of T and delta under both hypotheses
                 against their predictions, plus empirical variances next
                 to the CLOSED_FORM and FOURTH_MOMENT values and a
                 Gaussianity check against the FOURTH_MOMENT target.
  adjudication   Var(T | H0) measured twice (independent replicates) for
                 ten parameter sets, with ratio columns against the
                 closed form, the fourth-moment form, and the exact
                 per-sample value (mu0^2 + 2 sum alpha^4 (var_ar*var_rb)^2)/L.
                 The two replicates must agree; no verdict is issued on
                 which analytic form "wins" - the ratios are the record.
  roc_gap        calibrated analytic operating points against an
                 empirical ROC on a shared false-alarm grid.
"""

from __future__ import annotations

import math

import numpy as np

from .analytic import (
    derive_stats,
    detection_probability,
    lemma1_variance,
    threshold_for_target_pf,
)
from .model import (
    ChannelParams,
    GaussianStat,
    Hypothesis,
    RisConfig,
    RisState,
    ScenarioConfig,
    VarianceMode,
)
from .montecarlo import (
    STREAM_ADJUDICATION,
    STREAM_ROC,
    delta_samples,
    equivalent_channel_power,
    summarize,
    t_samples,
    validate_gaussianity,
)

DEFAULT_SEED = 20260814
SEED_CONSISTENCY_LIMIT = 0.03

_PI = math.pi


def _ris(n: int, state=RisState.ON, amplitudes=None, phases=None) -> RisConfig:
    return RisConfig(
        n_elements=n,
        amplitudes=amplitudes if amplitudes is not None else (1.0,) * n,
        phases=phases if phases is not None else (0.0,) * n,
        state=state,
    )


def _params(var_ar=1.0, var_rb=1.0, var_a=1.0, var_e=1.0, noise_var=1.0) -> ChannelParams:
    return ChannelParams(var_ar, var_rb, var_a, var_e, noise_var)


LEMMA_CONFIGS: tuple[tuple[str, RisConfig, ChannelParams], ...] = (
    ("surface_off", _ris(1, state=RisState.OFF), _params(var_a=1.3)),
    ("n8_coherent", _ris(8), _params(var_ar=0.5, var_rb=0.5, var_a=1.0)),
    ("n64_coherent", _ris(64), _params(var_ar=1.0, var_rb=1.0, var_a=1.0)),
    (
        "n12_tapered",
        _ris(
            12,
            amplitudes=(1.0, 0.95, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05),
            phases=(0.0, _PI / 6, _PI / 3, _PI / 2, _PI, 1.5 * _PI, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6),
        ),
        _params(var_ar=0.8, var_rb=0.6, var_a=0.4),
    ),
)


MEANS_SCENARIO = ScenarioConfig(
    ris=_ris(8),
    channel=ChannelParams(var_ar=0.25, var_rb=0.25, var_a=1.0, var_e=0.6, noise_var=0.8),
    samples_per_block=250,
)


ADJUDICATION_SETTINGS: tuple[tuple[str, RisConfig, ChannelParams], ...] = (
    ("off_mid_noise", _ris(1, state=RisState.OFF), _params(var_a=1.0, noise_var=0.5)),
    ("off_high_noise", _ris(1, state=RisState.OFF), _params(var_a=1.0, noise_var=2.0)),
    ("off_near_equal", _ris(1, state=RisState.OFF), _params(var_a=1.2, noise_var=1.0)),
    ("n2_strong_cascade", _ris(2), _params(var_ar=0.7, var_rb=0.7, var_a=0.3, noise_var=0.6)),
    ("n4_balanced", _ris(4), _params(var_ar=0.5, var_rb=0.5, var_a=1.0, noise_var=0.5)),
    (
        "n4_tapered",
        _ris(4, amplitudes=(1.0, 0.75, 0.5, 0.25), phases=(0.0, _PI / 4, _PI / 2, _PI)),
        _params(var_ar=1.0, var_rb=0.8, var_a=0.5, noise_var=1.0),
    ),
    ("n8_noisy", _ris(8), _params(var_ar=0.25, var_rb=0.25, var_a=1.0, noise_var=2.0)),
    ("n8_no_direct", _ris(8), _params(var_ar=0.25, var_rb=0.25, var_a=0.0, noise_var=0.4)),
    ("n16_experimentlike", _ris(16), _params(var_ar=0.2, var_rb=0.2, var_a=1.0, noise_var=1.0)),
    ("n16_low_noise", _ris(16), _params(var_ar=0.1, var_rb=0.1, var_a=2.0, noise_var=0.05)),
)
ADJUDICATION_BLOCK_LEN = 96


ROC_GAP_SCENARIO = ScenarioConfig(
    ris=_ris(16),
    channel=ChannelParams(var_ar=0.2, var_rb=0.2, var_a=1.0, var_e=1.0, noise_var=1.0),
    samples_per_block=200,
)


def exact_t_variance_h0(scenario: ScenarioConfig) -> float:
    """Exact per-sample-fading Var(T | H0).

    Per sample, |y|^2 has variance mu0^2 + 2 sum_n alpha_n^4 (var_ar var_rb)^2
    (the second term is the excess kurtosis contribution of the per-element
    Gaussian products); samples are i.i.d., so T averages L of them.
    """
    ch = scenario.channel
    mu0 = lemma1_variance(scenario.ris, ch) + ch.noise_var
    excess = 0.0
    if scenario.ris.state is RisState.ON:
        quartic = float(np.sum(np.asarray(scenario.ris.amplitudes) ** 4))
        excess = 2.0 * quartic * (ch.var_ar * ch.var_rb) ** 2
    return (mu0**2 + excess) / scenario.samples_per_block


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _lemma_section(seed: int, draws: int) -> list[str]:
    lines = [
        "-- lemma: equivalent channel power --",
        f"n_draws = {draws}",
        "name,n_elements,state,analytic,empirical,std_error,z_score,ok",
    ]
    for index, (name, ris, params) in enumerate(LEMMA_CONFIGS):
        analytic = lemma1_variance(ris, params)
        empirical, se = equivalent_channel_power(ris, params, draws, seed, replicate=index)
        z = (empirical - analytic) / se
        lines.append(
            f"{name},{ris.n_elements},{ris.state.value},{analytic!r},"
            f"{empirical!r},{se!r},{z!r},{_yes_no(abs(z) < 4.0)}"
        )
    return lines


def _means_section(seed: int, trials: int) -> list[str]:
    scenario = ScenarioConfig(
        ris=MEANS_SCENARIO.ris,
        channel=MEANS_SCENARIO.channel,
        samples_per_block=MEANS_SCENARIO.samples_per_block,
        seed=seed,
    )
    closed = derive_stats(scenario, VarianceMode.CLOSED_FORM)
    fourth = derive_stats(scenario, VarianceMode.FOURTH_MOMENT)
    rows = (
        ("t_h0", t_samples(scenario, Hypothesis.LEGITIMATE, trials), closed.t_h0, fourth.t_h0),
        ("t_h1", t_samples(scenario, Hypothesis.SPOOFING, trials), closed.t_h1, fourth.t_h1),
        (
            "delta_h0",
            delta_samples(scenario, Hypothesis.LEGITIMATE, trials),
            closed.dt_h0,
            fourth.dt_h0,
        ),
        (
            "delta_h1",
            delta_samples(scenario, Hypothesis.SPOOFING, trials),
            closed.dt_h1,
            fourth.dt_h1,
        ),
    )
    lines = [
        "-- means and gaussianity --",
        f"n_trials = {trials}",
        "scenario_samples_per_block = " + repr(scenario.samples_per_block),
        "statistic,n_trials,mean_expected,mean_emp,std_error,z_score,mean_ok,"
        "var_emp,var_closed,var_fourth,ratio_emp_closed,ratio_emp_fourth,cdf_gap,gauss_ok",
    ]
    for name, values, closed_stat, fourth_stat in rows:
        summary = summarize(values)
        se = summary.std_error
        z = (summary.mean - closed_stat.mean) / se
        gauss = validate_gaussianity(summary, GaussianStat(fourth_stat.mean, fourth_stat.variance))
        ratio_closed = (
            summary.variance / closed_stat.variance if closed_stat.variance > 0 else float("inf")
        )
        ratio_fourth = summary.variance / fourth_stat.variance
        lines.append(
            f"{name},{summary.n_trials},{closed_stat.mean!r},{summary.mean!r},{se!r},{z!r},"
            f"{_yes_no(abs(z) < 4.0)},{summary.variance!r},{closed_stat.variance!r},"
            f"{fourth_stat.variance!r},{ratio_closed!r},{ratio_fourth!r},"
            f"{gauss.cdf_gap!r},{_yes_no(gauss.passed)}"
        )
    return lines


def _adjudication_section(seed: int, trials: int) -> list[str]:
    lines = [
        "-- variance adjudication: Var(T | H0) --",
        f"n_trials_per_replicate = {trials}",
        f"samples_per_block = {ADJUDICATION_BLOCK_LEN}",
        "note = ratios are recorded, not judged; replicates must agree within "
        + repr(SEED_CONSISTENCY_LIMIT),
        "name,n_elements,var_ar,var_rb,var_a,noise_var,var_emp_a,var_emp_b,"
        "replicate_gap,replicates_ok,var_closed,var_fourth,var_exact,"
        "ratio_emp_closed,ratio_emp_fourth,ratio_emp_exact",
    ]
    for name, ris, params in ADJUDICATION_SETTINGS:
        scenario = ScenarioConfig(
            ris=ris, channel=params, samples_per_block=ADJUDICATION_BLOCK_LEN, seed=seed
        )
        emp = [
            float(
                t_samples(
                    scenario,
                    Hypothesis.LEGITIMATE,
                    trials,
                    label=STREAM_ADJUDICATION,
                    replicate=r,
                ).var(ddof=1)
            )
            for r in (0, 1)
        ]
        closed = derive_stats(scenario, VarianceMode.CLOSED_FORM).t_h0.variance
        fourth = derive_stats(scenario, VarianceMode.FOURTH_MOMENT).t_h0.variance
        exact = exact_t_variance_h0(scenario)
        gap = abs(emp[0] / emp[1] - 1.0)
        lines.append(
            f"{name},{ris.n_elements if ris.state is RisState.ON else 0},"
            f"{params.var_ar!r},{params.var_rb!r},{params.var_a!r},{params.noise_var!r},"
            f"{emp[0]!r},{emp[1]!r},{gap!r},{_yes_no(gap <= SEED_CONSISTENCY_LIMIT)},"
            f"{closed!r},{fourth!r},{exact!r},"
            f"{emp[0] / closed!r},{emp[0] / fourth!r},{emp[0] / exact!r}"
        )
    return lines


def _roc_gap_section(seed: int, trials: int) -> list[str]:
    scenario = ScenarioConfig(
        ris=ROC_GAP_SCENARIO.ris,
        channel=ROC_GAP_SCENARIO.channel,
        samples_per_block=ROC_GAP_SCENARIO.samples_per_block,
        seed=seed,
    )
    stats = derive_stats(scenario, VarianceMode.CALIBRATED, calibration_trials=trials)
    targets = [float(pf) for pf in np.geomspace(0.02, 0.9, 10)]
    dt0 = delta_samples(scenario, Hypothesis.LEGITIMATE, trials, label=STREAM_ROC)
    dt1 = delta_samples(scenario, Hypothesis.SPOOFING, trials, label=STREAM_ROC)
    lines = [
        "-- roc gap: calibrated analytic vs empirical --",
        f"n_trials = {trials}",
        "p_f_target,threshold,pd_analytic,pd_empirical,pf_empirical,pd_gap,pf_gap",
    ]
    pd_gaps, pf_gaps = [], []
    for pf in targets:
        threshold = threshold_for_target_pf(pf, stats)
        pd_an = detection_probability(threshold, stats)
        pd_emp = float(np.mean(dt1 > threshold))
        pf_emp = float(np.mean(dt0 > threshold))
        pd_gaps.append(abs(pd_emp - pd_an))
        pf_gaps.append(abs(pf_emp - pf))
        lines.append(
            f"{pf!r},{threshold!r},{pd_an!r},{pd_emp!r},{pf_emp!r},"
            f"{pd_gaps[-1]!r},{pf_gaps[-1]!r}"
        )
    lines.append(f"max_pd_gap = {max(pd_gaps)!r}")
    lines.append(f"max_pf_gap = {max(pf_gaps)!r}")
    return lines


def build_validation_report(
    seed: int = DEFAULT_SEED,
    lemma_draws: int = 100_000,
    means_trials: int = 30_000,
    adjudication_trials: int = 80_000,
    roc_trials: int = 20_000,
) -> str:
    """Assemble the full report; byte-identical across runs at equal inputs."""
    sections = [
        [
            "= validation report =",
            f"seed = {seed}",
            f"lemma_draws = {lemma_draws}",
            f"means_trials = {means_trials}",
            f"adjudication_trials = {adjudication_trials}",
            f"roc_trials = {roc_trials}",
        ],
        _lemma_section(seed, lemma_draws),
        _means_section(seed, means_trials),
        _adjudication_section(seed, adjudication_trials),
        _roc_gap_section(seed, roc_trials),
    ]
    return "\n\n".join("\n".join(section) for section in sections) + "\n"
