"""Spoofing detection for surface-assisted wireless links.

A legitimate transmitter is identified by the extra received power its
configured reflecting surface contributes; a spoofer on the direct path
cannot reproduce it. The package simulates the channel, derives Gaussian
approximations of the received-power test statistic, picks thresholds,
and validates everything against Monte-Carlo oracles.
"""

from .analytic import (
    HypothesisStats,
    OperatingPoint,
    analytic_roc,
    derive_stats,
    detection_probability,
    false_alarm_probability,
    lemma1_variance,
    operating_point,
    optimal_threshold,
    overall_error,
    q_function,
    q_inverse,
    threshold_for_target_pf,
)
from .channel import (
    ChannelRealization,
    SampleBlock,
    draw_complex_gaussian,
    draw_realization,
    equivalent_channel,
    simulate_block,
    substream,
)
from .detector import Decision, RssValue, TestStatistic, decide, delta_t, rss
from .experiments import (
    EXPERIMENTS,
    ExperimentResult,
    render_experiment_report,
    run_experiment,
    run_experiment_suite,
)
from .model import (
    ChannelParams,
    FadingMode,
    GaussianStat,
    Hypothesis,
    RisConfig,
    RisState,
    RocCurve,
    RocSource,
    ScenarioConfig,
    VarianceMode,
    parse_scenario,
    ris_off,
    serialize_scenario,
)
from .montecarlo import (
    EmpiricalSummary,
    GaussianityReport,
    calibrated_variances,
    delta_samples,
    empirical_delta_distribution,
    empirical_roc,
    empirical_t_distribution,
    equivalent_channel_power,
    t_samples,
    validate_gaussianity,
)
from .optimizer import SweepResult, SweepRow, coherent_config, sweep_size
from .reporting import (
    roc_from_csv,
    roc_to_csv,
    rocs_from_csv,
    stats_from_csv,
    stats_to_csv,
    sweep_from_csv,
    sweep_to_csv,
)
from .traceio import TraceHeader, read_trace, read_trace_header, write_trace
from .validation import build_validation_report

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
