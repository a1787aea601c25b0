"""Gaussian approximations of the test statistics and detection metrics.

With L samples per block, per-sample fading, and unit-modulus symbols,
the block power T concentrates around the mean received power:

    sigma_h^2 = sum_n alpha_n^2 var_rb var_ar + var_a   (surface on)
              = var_a                                   (surface off)
    E[T | H0] = sigma_h^2 + noise_var
    E[T | H1] = var_e + noise_var

Variances come in three flavours (VarianceMode):

  CLOSED_FORM    (2 sigma_h^4 + 2 noise^4 - mu^2) / L per hypothesis,
                 evaluated verbatim; algebraically (sigma_h^2 - noise)^2/L.
  FOURTH_MOMENT  mu^2 / L, from E[|y|^4] = 2 (E[|y|^2])^2 for circularly
                 symmetric Gaussian y.
  CALIBRATED     sample variances from a Monte-Carlo calibration run;
                 means stay analytic.

The delta statistic delta = T_ref - T_obs then has mean 0 under H0 and
mu_d1 = sigma_h^2 - var_e under H1, with variances summing those of the
two independent blocks. All detection metrics are Gaussian tail integrals
via Q(s) = 0.5 erfc(s / sqrt(2)).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcinv

from .errors import (
    DegenerateDistributionError,
    DomainError,
    NegativeVarianceError,
)
from .model import (
    ChannelParams,
    GaussianStat,
    RisConfig,
    RisState,
    RocCurve,
    RocSource,
    ScenarioConfig,
    VarianceMode,
)

logger = logging.getLogger(__name__)

ROC_PF_FLOOR = 1e-4


def lemma1_variance(ris: RisConfig, params: ChannelParams) -> float:
    """Variance of the equivalent legitimate channel, E[|h_eq|^2]."""
    if ris.state is RisState.OFF:
        return params.var_a
    gain = float(np.dot(ris.amplitudes, ris.amplitudes))
    return gain * params.var_rb * params.var_ar + params.var_a


@dataclass(frozen=True)
class HypothesisStats:
    """Gaussian models of T under H0/H1 and of delta under H0/H1."""

    t_h0: GaussianStat
    t_h1: GaussianStat
    dt_h0: GaussianStat
    dt_h1: GaussianStat
    sigma_h_sq: float
    variance_mode: VarianceMode


def _closed_form_variance(signal_var: float, noise_var: float, L: int) -> float:
    mu = signal_var + noise_var
    value = (2.0 * signal_var**2 + 2.0 * noise_var**2 - mu**2) / L
    if value < 0.0:
        # The expression equals (signal_var - noise_var)^2 / L, so a true
        # negative is impossible; tolerate cancellation dust only.
        scale = (2.0 * signal_var**2 + 2.0 * noise_var**2 + mu**2) / L
        if value < -1e-12 * scale:
            raise NegativeVarianceError(
                f"closed-form variance evaluated to {value!r} "
                f"(signal_var={signal_var!r}, noise_var={noise_var!r}, L={L})"
            )
        value = 0.0
    return value


def derive_stats(
    scenario: ScenarioConfig,
    mode: VarianceMode = VarianceMode.CLOSED_FORM,
    calibration_trials: int = 100_000,
) -> HypothesisStats:
    """Build the four Gaussian models for a scenario.

    CALIBRATED mode runs `calibration_trials` Monte-Carlo trials per
    statistic on dedicated substreams of scenario.seed; the other modes
    are pure functions of the parameters.
    """
    ch = scenario.channel
    L = scenario.samples_per_block
    sigma_h_sq = lemma1_variance(scenario.ris, ch)
    mu0 = sigma_h_sq + ch.noise_var
    mu1 = ch.var_e + ch.noise_var
    mu_d1 = sigma_h_sq - ch.var_e

    if mode is VarianceMode.CLOSED_FORM:
        v0 = _closed_form_variance(sigma_h_sq, ch.noise_var, L)
        v1 = _closed_form_variance(ch.var_e, ch.noise_var, L)
        vd0, vd1 = 2.0 * v0, v0 + v1
    elif mode is VarianceMode.FOURTH_MOMENT:
        v0 = mu0**2 / L
        v1 = mu1**2 / L
        vd0, vd1 = 2.0 * v0, v0 + v1
    elif mode is VarianceMode.CALIBRATED:
        from .montecarlo import calibrated_variances

        v0, v1, vd0, vd1 = calibrated_variances(scenario, calibration_trials)
    else:
        raise DomainError(f"unknown variance mode: {mode!r}")

    return HypothesisStats(
        t_h0=GaussianStat(mu0, v0),
        t_h1=GaussianStat(mu1, v1),
        dt_h0=GaussianStat(0.0, vd0),
        dt_h1=GaussianStat(mu_d1, vd1),
        sigma_h_sq=sigma_h_sq,
        variance_mode=mode,
    )


def q_function(s):
    """Standard normal tail probability Q(s) = P(Z > s)."""
    value = 0.5 * erfc(np.asarray(s, dtype=np.float64) / math.sqrt(2.0))
    return float(value) if np.isscalar(s) or np.ndim(s) == 0 else value


def q_inverse(p) -> float:
    """Inverse of q_function on the open interval (0, 1)."""
    arr = np.asarray(p, dtype=np.float64)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"q_inverse requires p in (0, 1), got {p!r}")
    value = math.sqrt(2.0) * erfcinv(2.0 * arr)
    return float(value) if np.isscalar(p) or np.ndim(p) == 0 else value


def _tail(stat: GaussianStat, threshold, name: str):
    if stat.variance <= 0.0:
        raise DegenerateDistributionError(
            f"{name} has zero variance; tail probabilities are undefined"
        )
    return q_function((threshold - stat.mean) / stat.std)


def detection_probability(threshold, stats: HypothesisStats):
    """P(delta > threshold | H1)."""
    return _tail(stats.dt_h1, threshold, "delta under H1")


def false_alarm_probability(threshold, stats: HypothesisStats):
    """P(delta > threshold | H0)."""
    return _tail(stats.dt_h0, threshold, "delta under H0")


def threshold_for_target_pf(target_pf: float, stats: HypothesisStats) -> float:
    """Threshold achieving the requested false-alarm probability."""
    if stats.dt_h0.variance <= 0.0:
        raise DegenerateDistributionError("delta under H0 has zero variance")
    return q_inverse(target_pf) * stats.dt_h0.std + stats.dt_h0.mean


def overall_error(threshold, stats: HypothesisStats):
    """Sum of both error modes, P_f + (1 - P_d), at equal priors weighting."""
    return false_alarm_probability(threshold, stats) + (
        1.0 - detection_probability(threshold, stats)
    )


@dataclass(frozen=True)
class OperatingPoint:
    threshold: float
    p_false_alarm: float
    p_detection: float
    p_error_total: float


def operating_point(stats: HypothesisStats, threshold: float) -> OperatingPoint:
    pf = false_alarm_probability(threshold, stats)
    pd = detection_probability(threshold, stats)
    return OperatingPoint(
        threshold=float(threshold),
        p_false_alarm=pf,
        p_detection=pd,
        p_error_total=pf + (1.0 - pd),
    )


def _numeric_minimum(stats: HypothesisStats) -> float:
    """Grid pre-scan plus golden-section refinement; defensive fallback."""
    from scipy.optimize import minimize_scalar

    lo = min(stats.dt_h0.mean - 8.0 * stats.dt_h0.std, stats.dt_h1.mean - 8.0 * stats.dt_h1.std)
    hi = max(stats.dt_h0.mean + 8.0 * stats.dt_h0.std, stats.dt_h1.mean + 8.0 * stats.dt_h1.std)
    grid = np.linspace(lo, hi, 4097)
    errors = overall_error(grid, stats)
    k = min(max(int(np.argmin(errors)), 1), len(grid) - 2)
    result = minimize_scalar(
        lambda e: overall_error(e, stats),
        method="golden",
        bracket=(grid[k - 1], grid[k], grid[k + 1]),
    )
    return float(result.x)


def optimal_threshold(stats: HypothesisStats) -> float:
    """Threshold minimizing the overall error between the two Gaussians.

    Stationary points satisfy the density-equality quadratic

        (v0 - v1) e^2 - 2 v0 m e + v0 m^2 - 2 v0 v1 ln(s0/s1) = 0

    (means shifted so the H0 mean is zero, m the shifted H1 mean). Both
    real roots are density crossings; only one minimizes the error, so the
    candidates are evaluated and the argmin returned. For equal variances
    the quadratic degenerates and the midpoint of the means is optimal.
    The discriminant v0 v1 m^2 + 2 v0 v1 (v0 - v1) ln(s0/s1) is provably
    nonnegative for valid variances; the numeric fallback is defensive.
    """
    v0, v1 = stats.dt_h0.variance, stats.dt_h1.variance
    if v0 <= 0.0 or v1 <= 0.0:
        raise DegenerateDistributionError("optimal threshold requires positive variances")
    m0 = stats.dt_h0.mean
    m = stats.dt_h1.mean - m0

    if abs(v0 - v1) <= 1e-12 * max(v0, v1):
        return m0 + 0.5 * m

    d = v0 - v1
    log_ratio = 0.5 * math.log(v0 / v1)  # ln(s0/s1)
    disc = v0 * v1 * (m * m + 2.0 * d * log_ratio)
    if disc < 0.0:
        logger.warning("threshold quadratic has no real root; using numeric minimizer")
        return _numeric_minimum(stats)

    root = math.sqrt(disc)
    candidates = [(v0 * m + root) / d]
    if v0 * m + root != 0.0:
        # Rationalized form of (v0 m - root) / d, stable as v0 -> v1.
        candidates.append(v0 * (m * m - 2.0 * v1 * log_ratio) / (v0 * m + root))
    else:
        candidates.append((v0 * m - root) / d)

    finite = [m0 + c for c in candidates if math.isfinite(c)]
    if not finite:
        logger.warning("threshold roots not finite; using numeric minimizer")
        return _numeric_minimum(stats)
    return min(finite, key=lambda e: overall_error(e, stats))


def analytic_roc(stats: HypothesisStats, n_points: int = 20) -> RocCurve:
    """ROC traced over a log-spaced false-alarm grid in [1e-4, 1 - 1e-4]."""
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    pf_grid = np.geomspace(ROC_PF_FLOOR, 1.0 - ROC_PF_FLOOR, n_points)
    thresholds = [threshold_for_target_pf(pf, stats) for pf in pf_grid]
    points = [(float(pf), detection_probability(t, stats)) for pf, t in zip(pf_grid, thresholds)]
    return RocCurve(
        points=tuple(points),
        thresholds=tuple(thresholds),
        source=RocSource.ANALYTIC,
        n_trials_per_point=0,
    )
