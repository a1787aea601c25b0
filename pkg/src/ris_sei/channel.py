"""Channel model and the deterministic block-sampling engine.

Received samples under the two hypotheses:

    H0 (legitimate):  y(l) = h_eq(l) * x(l) + z(l)
        h_eq = sum_n alpha_n e^{j theta_n} h_rb,n h_ar,n + h_ab   (surface on)
        h_eq = h_ab                                               (surface off)
    H1 (spoofing):    y(l) = h_eb(l) * x(l) + z(l)

All links are circularly symmetric complex Gaussian (real and imaginary
parts each N(0, var/2)); x(l) are i.i.d. unit-modulus 4-phase symbols;
z(l) is receiver noise.

Randomness discipline: every block draws from its own substream keyed by
(seed, *stream_key, block_index). A block therefore depends only on its
key, never on how many other blocks were drawn or in what order, which
makes runs reproducible, partition-independent, and safe to parallelize.
Within one block the generator is consumed in a fixed order: all normal
deviates first (link draws, then noise), then the uniforms that select
data symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError, OutOfRangeError
from .model import (
    ChannelParams,
    FadingMode,
    Hypothesis,
    RisConfig,
    RisState,
    ScenarioConfig,
)

# Stream labels keep independent runs on disjoint substreams. The block
# label is used here; higher labels belong to the Monte-Carlo module.
STREAM_BLOCK = 0

_SYMBOLS = np.array([1.0, 1.0j, -1.0, -1.0j], dtype=np.complex128)


def substream(seed: int, key: tuple[int, ...]) -> np.random.Generator:
    """Independent generator for (seed, *key); SFC64 for throughput."""
    return np.random.Generator(np.random.SFC64(np.random.SeedSequence((seed, *key))))


def draw_complex_gaussian(variance: float, rng: np.random.Generator, size=None):
    """Circularly symmetric complex Gaussian draw(s) with E[|h|^2] = variance."""
    if variance < 0 or not math.isfinite(variance):
        raise OutOfRangeError("variance", f"must be finite and >= 0, got {variance!r}")
    scale = math.sqrt(variance / 2.0)
    shape = () if size is None else size
    value = scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return complex(value) if size is None else value


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One draw of every link: per-element cascades plus both direct paths."""

    h_ar: np.ndarray
    h_rb: np.ndarray
    h_ab: complex
    h_eb: complex

    def __post_init__(self):
        h_ar = np.asarray(self.h_ar, dtype=np.complex128)
        h_rb = np.asarray(self.h_rb, dtype=np.complex128)
        if h_ar.ndim != 1 or h_rb.ndim != 1:
            raise OutOfRangeError("h_ar", "per-element links must be 1-D arrays")
        object.__setattr__(self, "h_ar", h_ar)
        object.__setattr__(self, "h_rb", h_rb)
        object.__setattr__(self, "h_ab", complex(self.h_ab))
        object.__setattr__(self, "h_eb", complex(self.h_eb))


def draw_realization(
    params: ChannelParams, n_elements: int, rng: np.random.Generator
) -> ChannelRealization:
    if n_elements < 1:
        raise OutOfRangeError("n_elements", f"must be >= 1, got {n_elements}")
    return ChannelRealization(
        h_ar=draw_complex_gaussian(params.var_ar, rng, (n_elements,)),
        h_rb=draw_complex_gaussian(params.var_rb, rng, (n_elements,)),
        h_ab=draw_complex_gaussian(params.var_a, rng),
        h_eb=draw_complex_gaussian(params.var_e, rng),
    )


def ris_coefficients(ris: RisConfig) -> np.ndarray:
    """Per-element reflection coefficients alpha_n e^{j theta_n}."""
    alpha = np.asarray(ris.amplitudes, dtype=np.float64)
    theta = np.asarray(ris.phases, dtype=np.float64)
    return alpha * np.exp(1j * theta)


def equivalent_channel(realization: ChannelRealization, ris: RisConfig) -> complex:
    """Receiver-side equivalent channel for the legitimate transmitter."""
    if ris.state is RisState.OFF:
        return realization.h_ab
    if len(realization.h_ar) != ris.n_elements or len(realization.h_rb) != ris.n_elements:
        raise LengthMismatchError(
            f"realization has {len(realization.h_ar)}/{len(realization.h_rb)} elements, "
            f"surface has {ris.n_elements}"
        )
    cascade = np.sum(ris_coefficients(ris) * realization.h_rb * realization.h_ar)
    return complex(cascade + realization.h_ab)


@dataclass(frozen=True, eq=False)
class SampleBlock:
    """A block of received complex baseband samples.

    hypothesis/seed_used are provenance fields; they are None for blocks
    read back from traces. Blocks may be empty only in that case.
    """

    samples: np.ndarray
    hypothesis: Hypothesis | None = None
    seed_used: int | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1:
            raise OutOfRangeError("samples", "expected a 1-D array of complex samples")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)


def _layout(scenario: ScenarioConfig, hypothesis: Hypothesis) -> tuple[int, int]:
    """(complex draws per block, cascade element count) for the fixed layout."""
    L = scenario.samples_per_block
    cascade = (
        hypothesis is Hypothesis.LEGITIMATE and scenario.ris.state is RisState.ON
    )
    N = scenario.ris.n_elements if cascade else 0
    if scenario.fading_mode is FadingMode.PER_SAMPLE:
        m = 2 * L * N + 2 * L  # links (+ direct) per sample, then noise
    else:
        m = 2 * N + 1 + L  # one channel draw per block, noise per sample
    return m, N


def block_samples(
    scenario: ScenarioConfig,
    hypothesis: Hypothesis,
    stream_key: tuple[int, ...],
    start: int,
    count: int,
) -> np.ndarray:
    """Draw `count` consecutive blocks as a (count, L) complex array.

    Block i uses substream (seed, *stream_key, start + i). The caller is
    responsible for chunking: the working buffer holds roughly
    count * (2NL + 2L) float64 values in per-sample mode.
    """
    seed = scenario.require_seed()
    if count < 1:
        raise OutOfRangeError("count", f"must be >= 1, got {count}")
    L = scenario.samples_per_block
    ch = scenario.channel
    m, N = _layout(scenario, hypothesis)
    per_sample = scenario.fading_mode is FadingMode.PER_SAMPLE

    normals = np.empty((count, 2 * m))
    uniforms = np.empty((count, L))
    for i in range(count):
        rng = substream(seed, (*stream_key, start + i))
        rng.standard_normal(out=normals[i])
        rng.random(out=uniforms[i])
    draws = normals.view(np.complex128)

    direct_var = ch.var_a if hypothesis is Hypothesis.LEGITIMATE else ch.var_e
    if N:
        coeff = ris_coefficients(scenario.ris) * (math.sqrt(ch.var_ar * ch.var_rb) / 2.0)
        if per_sample:
            h_ar = draws[:, : L * N]
            h_rb = draws[:, L * N : 2 * L * N]
            direct = draws[:, 2 * L * N : 2 * L * N + L]
            noise = draws[:, 2 * L * N + L :]
            cascade = ((h_ar * h_rb).reshape(count * L, N) @ coeff).reshape(count, L)
        else:
            h_ar = draws[:, :N]
            h_rb = draws[:, N : 2 * N]
            direct = draws[:, 2 * N : 2 * N + 1]
            noise = draws[:, 2 * N + 1 :]
            cascade = (h_ar * h_rb) @ coeff
            cascade = cascade[:, None]
        h_eq = cascade + math.sqrt(direct_var / 2.0) * direct
    else:
        split = L if per_sample else 1
        h_eq = math.sqrt(direct_var / 2.0) * draws[:, :split]
        noise = draws[:, split:]

    x = _SYMBOLS[(4.0 * uniforms).astype(np.int8)]
    return h_eq * x + math.sqrt(ch.noise_var / 2.0) * noise


def simulate_block(
    scenario: ScenarioConfig,
    hypothesis: Hypothesis,
    block_index: int = 0,
    subcarrier: int = 0,
) -> SampleBlock:
    """Simulate one received block; deterministic in (scenario, arguments)."""
    if not 0 <= subcarrier < scenario.n_subcarriers:
        raise OutOfRangeError(
            "subcarrier", f"must lie in [0, {scenario.n_subcarriers}), got {subcarrier}"
        )
    key = (STREAM_BLOCK, hypothesis.tag, subcarrier)
    samples = block_samples(scenario, hypothesis, key, block_index, 1)[0]
    return SampleBlock(samples=samples, hypothesis=hypothesis, seed_used=scenario.seed)
