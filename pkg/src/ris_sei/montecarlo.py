"""Monte-Carlo oracles: empirical distributions, ROC curves, calibration.

Every run draws blocks through `channel.block_samples` on a substream
keyed by (seed, label, kind, hypothesis, replicate, part, trial), where
`label` separates the public entry points, `kind` separates single-block
runs from paired delta runs, and `replicate` allows deliberately
independent repetitions at the same seed. Trial i depends only on its
key, so results are independent of chunking and execution order, and two
runs with the same scenario are byte-identical.

Delta trials draw a fresh reference block and a fresh observed block per
trial (the reference is legitimate by definition; the observed block
follows the requested hypothesis).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import block_samples
from .errors import InsufficientTrialsError
from .model import (
    GaussianStat,
    Hypothesis,
    RocCurve,
    RocSource,
    ScenarioConfig,
)

STREAM_T = 1
STREAM_DELTA = 2
STREAM_ROC = 3
STREAM_CALIBRATION = 4
STREAM_LEMMA = 5
STREAM_ADJUDICATION = 6

_CHUNK = 256
_KIND_SINGLE = 0
_KIND_PAIR = 1

MIN_TRIALS = 100


def _t_run(scenario, hypothesis, stream_key, n_trials) -> np.ndarray:
    out = np.empty(n_trials)
    for c0 in range(0, n_trials, _CHUNK):
        c = min(_CHUNK, n_trials - c0)
        y = block_samples(scenario, hypothesis, stream_key, c0, c)
        out[c0 : c0 + c] = (y.real**2 + y.imag**2).mean(axis=1)
    return out


def t_samples(
    scenario: ScenarioConfig,
    hypothesis: Hypothesis,
    n_trials: int,
    label: int = STREAM_T,
    replicate: int = 0,
) -> np.ndarray:
    """Block-power draws T_1..T_n, one independent block per trial."""
    if n_trials < MIN_TRIALS:
        raise InsufficientTrialsError(f"need at least {MIN_TRIALS} trials, got {n_trials}")
    key = (label, _KIND_SINGLE, hypothesis.tag, replicate, 0)
    return _t_run(scenario, hypothesis, key, n_trials)


def delta_samples(
    scenario: ScenarioConfig,
    hypothesis: Hypothesis,
    n_trials: int,
    label: int = STREAM_DELTA,
    replicate: int = 0,
) -> np.ndarray:
    """Paired draws of delta = T_ref - T_obs with obs under `hypothesis`."""
    if n_trials < MIN_TRIALS:
        raise InsufficientTrialsError(f"need at least {MIN_TRIALS} trials, got {n_trials}")
    ref_key = (label, _KIND_PAIR, hypothesis.tag, replicate, 0)
    obs_key = (label, _KIND_PAIR, hypothesis.tag, replicate, 1)
    ref = _t_run(scenario, Hypothesis.LEGITIMATE, ref_key, n_trials)
    obs = _t_run(scenario, hypothesis, obs_key, n_trials)
    return ref - obs


@dataclass(frozen=True)
class EmpiricalSummary:
    """Sample moments and a histogram of one statistic's draws."""

    n_trials: int
    mean: float
    variance: float
    bin_edges: tuple[float, ...]
    bin_counts: tuple[int, ...]

    @property
    def std_error(self) -> float:
        """Standard error of the mean estimate."""
        return (self.variance / self.n_trials) ** 0.5


def summarize(values: np.ndarray) -> EmpiricalSummary:
    values = np.asarray(values, dtype=np.float64)
    counts, edges = np.histogram(values, bins="fd")
    return EmpiricalSummary(
        n_trials=len(values),
        mean=float(values.mean()),
        variance=float(values.var(ddof=1)),
        bin_edges=tuple(float(e) for e in edges),
        bin_counts=tuple(int(c) for c in counts),
    )


def empirical_t_distribution(
    scenario: ScenarioConfig, hypothesis: Hypothesis, n_trials: int
) -> EmpiricalSummary:
    return summarize(t_samples(scenario, hypothesis, n_trials, label=STREAM_T))


def empirical_delta_distribution(
    scenario: ScenarioConfig, hypothesis: Hypothesis, n_trials: int
) -> EmpiricalSummary:
    return summarize(delta_samples(scenario, hypothesis, n_trials, label=STREAM_DELTA))


def roc_from_deltas(dt_h0: np.ndarray, dt_h1: np.ndarray, thresholds) -> RocCurve:
    """Operating points from shared delta draws at the given thresholds.

    Shared draws make the curve monotone by construction: lowering the
    threshold can only add alarms under both hypotheses.
    """
    dt_h0 = np.asarray(dt_h0, dtype=np.float64)
    dt_h1 = np.asarray(dt_h1, dtype=np.float64)
    entries = []
    for t in thresholds:
        pf = float(np.mean(dt_h0 > t))
        pd = float(np.mean(dt_h1 > t))
        entries.append((pf, pd, float(t)))
    entries.sort(key=lambda e: (e[0], e[1], -e[2]))
    return RocCurve(
        points=tuple((pf, pd) for pf, pd, _ in entries),
        thresholds=tuple(t for _, _, t in entries),
        source=RocSource.EMPIRICAL,
        n_trials_per_point=len(dt_h0),
    )


def empirical_roc(scenario: ScenarioConfig, thresholds, n_trials: int) -> RocCurve:
    """Empirical ROC over shared draws: n_trials deltas per hypothesis."""
    dt0 = delta_samples(scenario, Hypothesis.LEGITIMATE, n_trials, label=STREAM_ROC)
    dt1 = delta_samples(scenario, Hypothesis.SPOOFING, n_trials, label=STREAM_ROC)
    return roc_from_deltas(dt0, dt1, thresholds)


def calibrated_variances(
    scenario: ScenarioConfig, n_trials: int = 100_000
) -> tuple[float, float, float, float]:
    """Sample variances (T|H0, T|H1, delta|H0, delta|H1) for CALIBRATED mode."""
    if n_trials < MIN_TRIALS:
        raise InsufficientTrialsError(f"need at least {MIN_TRIALS} trials, got {n_trials}")
    v_t0 = t_samples(scenario, Hypothesis.LEGITIMATE, n_trials, label=STREAM_CALIBRATION)
    v_t1 = t_samples(scenario, Hypothesis.SPOOFING, n_trials, label=STREAM_CALIBRATION)
    v_d0 = delta_samples(scenario, Hypothesis.LEGITIMATE, n_trials, label=STREAM_CALIBRATION)
    v_d1 = delta_samples(scenario, Hypothesis.SPOOFING, n_trials, label=STREAM_CALIBRATION)
    return (
        float(v_t0.var(ddof=1)),
        float(v_t1.var(ddof=1)),
        float(v_d0.var(ddof=1)),
        float(v_d1.var(ddof=1)),
    )


@dataclass(frozen=True)
class GaussianityReport:
    """How well draws match a target Gaussian."""

    n_trials: int
    mean_gap_sigmas: float
    cdf_gap: float
    mean_ok: bool
    cdf_ok: bool

    @property
    def passed(self) -> bool:
        return self.mean_ok and self.cdf_ok


MIN_GAUSSIANITY_TRIALS = 1_000
MEAN_GAP_LIMIT_SIGMAS = 4.0
CDF_GAP_LIMIT = 0.02


def validate_gaussianity(summary: EmpiricalSummary, target: GaussianStat) -> GaussianityReport:
    """Compare an empirical summary against a target Gaussian.

    The mean check is in units of the empirical standard error; the CDF
    check is the largest gap between the empirical CDF and the target CDF,
    evaluated at the histogram bin edges.
    """
    from .analytic import q_function

    if summary.n_trials < MIN_GAUSSIANITY_TRIALS:
        raise InsufficientTrialsError(
            f"need at least {MIN_GAUSSIANITY_TRIALS} trials, got {summary.n_trials}"
        )
    if target.variance <= 0.0:
        mean_gap = float("inf")
    else:
        mean_gap = abs(summary.mean - target.mean) / summary.std_error

    edges = np.asarray(summary.bin_edges)
    counts = np.asarray(summary.bin_counts, dtype=np.float64)
    emp_cdf = np.concatenate(([0.0], np.cumsum(counts) / summary.n_trials))
    if target.variance > 0.0:
        target_cdf = 1.0 - q_function((edges - target.mean) / target.std)
        cdf_gap = float(np.max(np.abs(emp_cdf - target_cdf)))
    else:
        cdf_gap = float("inf")

    return GaussianityReport(
        n_trials=summary.n_trials,
        mean_gap_sigmas=mean_gap,
        cdf_gap=cdf_gap,
        mean_ok=mean_gap < MEAN_GAP_LIMIT_SIGMAS,
        cdf_ok=cdf_gap < CDF_GAP_LIMIT,
    )


def equivalent_channel_power(
    ris,
    params,
    n_draws: int,
    seed: int,
    label: int = STREAM_LEMMA,
    replicate: int = 0,
) -> tuple[float, float]:
    """Monte-Carlo estimate (mean, std_error) of E[|h_eq|^2].

    Oracle for the closed-form channel variance: draws every link fresh
    per realization and averages |h_eq|^2. Chunks use per-chunk substreams
    of (seed, label), so the estimate is chunk-order independent.
    """
    from .channel import ris_coefficients, substream
    from .model import RisState

    if n_draws < MIN_TRIALS:
        raise InsufficientTrialsError(f"need at least {MIN_TRIALS} draws, got {n_draws}")
    n = ris.n_elements
    on = ris.state is RisState.ON
    coeff = ris_coefficients(ris) * (np.sqrt(params.var_ar * params.var_rb) / 2.0) if on else None

    chunk = max(1, min(20_000, 5_000_000 // max(1, n)))
    total = 0.0
    total_sq = 0.0
    done = 0
    index = 0
    while done < n_draws:
        c = min(chunk, n_draws - done)
        rng = substream(seed, (label, replicate, index))
        if on:
            draws = rng.standard_normal((c, 4 * n + 2)).view(np.complex128)
            h_eq = (draws[:, :n] * draws[:, n : 2 * n]) @ coeff
            h_eq += np.sqrt(params.var_a / 2.0) * draws[:, 2 * n]
        else:
            draws = rng.standard_normal((c, 2)).view(np.complex128)
            h_eq = np.sqrt(params.var_a / 2.0) * draws[:, 0]
        power = h_eq.real**2 + h_eq.imag**2
        total += float(power.sum())
        total_sq += float((power**2).sum())
        done += c
        index += 1
    mean = total / n_draws
    var = (total_sq - n_draws * mean * mean) / (n_draws - 1)
    return mean, (var / n_draws) ** 0.5
