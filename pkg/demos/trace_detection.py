"""End-to-end detection from binary I/Q trace files.

Simulates a trusted reference block and two observed blocks (one
legitimate, one spoofed), writes all three to trace files, reads them
back, and runs the threshold detector on the file contents.
"""

import tempfile
from pathlib import Path

from ris_sei.analytic import derive_stats, optimal_threshold
from ris_sei.channel import simulate_block
from ris_sei.detector import decide, delta_t, rss
from ris_sei.model import (
    ChannelParams,
    Hypothesis,
    RisConfig,
    ScenarioConfig,
    VarianceMode,
)
from ris_sei.traceio import read_trace, read_trace_header, write_trace

scenario = ScenarioConfig(
    ris=RisConfig(16, (1.0,) * 16, (0.0,) * 16),
    channel=ChannelParams(var_ar=0.2, var_rb=0.2, var_a=1.0, var_e=1.0, noise_var=0.5),
    samples_per_block=500,
    seed=1001,
)
threshold = optimal_threshold(derive_stats(scenario, VarianceMode.FOURTH_MOMENT))

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    blocks = {
        "reference": simulate_block(scenario, Hypothesis.LEGITIMATE, block_index=0),
        "legitimate": simulate_block(scenario, Hypothesis.LEGITIMATE, block_index=1),
        "spoofed": simulate_block(scenario, Hypothesis.SPOOFING, block_index=2),
    }
    for name, block in blocks.items():
        write_trace(tmp / f"{name}.iqt", block.samples, sample_rate_hz=1_000_000)

    header = read_trace_header(tmp / "reference.iqt")
    print(f"trace header: {header.n_samples} samples at {header.sample_rate_hz} Hz")
    print(f"threshold = {threshold:.4f}\n")

    reference = rss(read_trace(tmp / "reference.iqt"))
    for name in ("legitimate", "spoofed"):
        observed = rss(read_trace(tmp / f"{name}.iqt"))
        statistic = delta_t(reference, observed)
        verdict = decide(statistic, threshold)
        print(f"{name:11} delta = {statistic.delta:+.4f} -> {verdict.value}")
