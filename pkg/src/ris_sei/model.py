"""Domain types and the flat key=value scenario document format.

A scenario document fully determines a simulation run:

    # comments and blank lines are ignored; `key = value`, one per line
    n_elements = 16
    amplitudes = uniform:1.0        # or comma-separated reals in [0, 1]
    phases = coherent               # or `zero`, or comma-separated [0, 2*pi)
    ris_state = on                  # on | off
    var_ar = 0.2
    var_rb = 0.2
    var_a = 1.0
    var_e = 0.25
    noise_var = 1.0
    samples_per_block = 500
    n_subcarriers = 1               # optional, default 1
    fading_mode = per_sample        # optional: per_sample | per_block
    seed = 1234                     # optional; runs that simulate require it

Parsing is strict: unknown or duplicate keys, bad syntax, and malformed
numbers raise MalformedDocumentError; domain violations raise
OutOfRangeError; absent required keys raise MissingKeyError. All three
name the offending key.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    MalformedDocumentError,
    MissingKeyError,
    NegativeVarianceError,
    OutOfRangeError,
)

TWO_PI = 2.0 * math.pi


class RisState(Enum):
    ON = "on"
    OFF = "off"


class Hypothesis(Enum):
    """H0: legitimate transmitter (surface follows its configuration).
    H1: spoofer without surface assistance (direct path only)."""

    LEGITIMATE = "h0"
    SPOOFING = "h1"

    @property
    def tag(self) -> int:
        return 0 if self is Hypothesis.LEGITIMATE else 1


class FadingMode(Enum):
    PER_SAMPLE = "per_sample"
    PER_BLOCK = "per_block"


class VarianceMode(Enum):
    """How test-statistic variances are obtained.

    CLOSED_FORM: literal closed-form expressions (2*sh^4 + 2*s^4 - mu^2)/L.
    FOURTH_MOMENT: Gaussian fourth-moment identity, mu^2/L per hypothesis.
    CALIBRATED: sample variances from a Monte-Carlo calibration run.
    """

    CLOSED_FORM = "closed_form"
    FOURTH_MOMENT = "fourth_moment"
    CALIBRATED = "calibrated"


class RocSource(Enum):
    ANALYTIC = "analytic"
    EMPIRICAL = "empirical"


def _check_finite(key: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise OutOfRangeError(key, f"must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RisConfig:
    """Reflecting surface: per-element amplitudes and phase shifts."""

    n_elements: int
    amplitudes: tuple[float, ...]
    phases: tuple[float, ...]
    state: RisState = RisState.ON

    def __post_init__(self):
        if not isinstance(self.n_elements, int) or self.n_elements < 1:
            raise OutOfRangeError("n_elements", f"must be a positive integer, got {self.n_elements!r}")
        object.__setattr__(self, "amplitudes", tuple(float(a) for a in self.amplitudes))
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))
        if len(self.amplitudes) != self.n_elements:
            raise OutOfRangeError(
                "amplitudes", f"expected {self.n_elements} values, got {len(self.amplitudes)}"
            )
        if len(self.phases) != self.n_elements:
            raise OutOfRangeError(
                "phases", f"expected {self.n_elements} values, got {len(self.phases)}"
            )
        for a in self.amplitudes:
            _check_finite("amplitudes", a)
            if not 0.0 <= a <= 1.0:
                raise OutOfRangeError("amplitudes", f"each must lie in [0, 1], got {a!r}")
        for p in self.phases:
            _check_finite("phases", p)
            if not 0.0 <= p < TWO_PI:
                raise OutOfRangeError("phases", f"each must lie in [0, 2*pi), got {p!r}")
        if not isinstance(self.state, RisState):
            raise OutOfRangeError("ris_state", f"expected RisState, got {self.state!r}")


def ris_off(config: RisConfig) -> RisConfig:
    """Same surface with reflection disabled (direct path only)."""
    return dataclasses.replace(config, state=RisState.OFF)


@dataclass(frozen=True)
class ChannelParams:
    """Variances of the circularly symmetric complex Gaussian links.

    var_ar / var_rb: per-element transmitter-surface / surface-receiver links.
    var_a: direct legitimate link. var_e: direct spoofer link.
    noise_var: receiver noise power.
    """

    var_ar: float
    var_rb: float
    var_a: float
    var_e: float
    noise_var: float

    def __post_init__(self):
        for key in ("var_ar", "var_rb", "var_a", "var_e", "noise_var"):
            value = _check_finite(key, getattr(self, key))
            object.__setattr__(self, key, value)
            if value < 0.0:
                raise OutOfRangeError(key, f"must be >= 0, got {value!r}")
        if self.var_ar <= 0.0 or self.var_rb <= 0.0:
            raise OutOfRangeError("var_ar", "per-element link variances must be > 0")
        if self.noise_var <= 0.0:
            raise OutOfRangeError("noise_var", f"must be > 0, got {self.noise_var!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce a run: surface, channel, block shape, seed."""

    ris: RisConfig
    channel: ChannelParams
    samples_per_block: int
    n_subcarriers: int = 1
    fading_mode: FadingMode = FadingMode.PER_SAMPLE
    seed: int | None = None

    def __post_init__(self):
        if not isinstance(self.samples_per_block, int) or self.samples_per_block < 1:
            raise OutOfRangeError(
                "samples_per_block", f"must be a positive integer, got {self.samples_per_block!r}"
            )
        if not isinstance(self.n_subcarriers, int) or self.n_subcarriers < 1:
            raise OutOfRangeError(
                "n_subcarriers", f"must be a positive integer, got {self.n_subcarriers!r}"
            )
        if not isinstance(self.fading_mode, FadingMode):
            raise OutOfRangeError("fading_mode", f"expected FadingMode, got {self.fading_mode!r}")
        if self.seed is not None:
            if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
                raise OutOfRangeError("seed", f"must be an integer in [0, 2^64), got {self.seed!r}")

    def require_seed(self) -> int:
        if self.seed is None:
            raise MissingKeyError("seed")
        return self.seed


@dataclass(frozen=True)
class GaussianStat:
    """Mean and variance of one Gaussian approximation."""

    mean: float
    variance: float

    def __post_init__(self):
        object.__setattr__(self, "mean", float(self.mean))
        object.__setattr__(self, "variance", float(self.variance))
        if not math.isfinite(self.mean) or not math.isfinite(self.variance):
            raise OutOfRangeError("gaussian_stat", "mean and variance must be finite")
        if self.variance < 0.0:
            raise NegativeVarianceError(f"variance must be >= 0, got {self.variance!r}")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class RocCurve:
    """Operating points (P_f, P_d) with the thresholds that produced them."""

    points: tuple[tuple[float, float], ...]
    thresholds: tuple[float, ...]
    source: RocSource
    n_trials_per_point: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple((float(pf), float(pd)) for pf, pd in self.points)
        )
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        if len(self.points) != len(self.thresholds):
            raise OutOfRangeError("thresholds", "one threshold per ROC point required")
        for pf, pd in self.points:
            if not 0.0 <= pf <= 1.0 or not 0.0 <= pd <= 1.0:
                raise OutOfRangeError("points", f"probabilities must lie in [0, 1], got {(pf, pd)}")

    @property
    def p_false_alarm(self) -> tuple[float, ...]:
        return tuple(pf for pf, _ in self.points)

    @property
    def p_detection(self) -> tuple[float, ...]:
        return tuple(pd for _, pd in self.points)


_REQUIRED_KEYS = (
    "n_elements",
    "amplitudes",
    "phases",
    "ris_state",
    "var_ar",
    "var_rb",
    "var_a",
    "var_e",
    "noise_var",
    "samples_per_block",
)
_OPTIONAL_KEYS = ("n_subcarriers", "fading_mode", "seed")
_ALL_KEYS = frozenset(_REQUIRED_KEYS) | frozenset(_OPTIONAL_KEYS)


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw, 10)
    except ValueError:
        raise MalformedDocumentError(f"key {key!r}: expected an integer, got {raw!r}") from None


def _parse_float(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise MalformedDocumentError(f"key {key!r}: expected a number, got {raw!r}") from None
    return _check_finite(key, value)


def _parse_float_list(key: str, raw: str) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",")]
    if any(not p for p in parts):
        raise MalformedDocumentError(f"key {key!r}: empty entry in comma-separated list")
    return tuple(_parse_float(key, p) for p in parts)


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse a scenario document into a validated ScenarioConfig."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedDocumentError(f"line {lineno}: expected `key = value`, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _ALL_KEYS:
            raise MalformedDocumentError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise MalformedDocumentError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise MalformedDocumentError(f"line {lineno}: empty value for key {key!r}")
        raw[key] = value

    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise MissingKeyError(key)

    n = _parse_int("n_elements", raw["n_elements"])
    if n < 1:
        raise OutOfRangeError("n_elements", f"must be a positive integer, got {n}")

    amp_raw = raw["amplitudes"]
    if amp_raw.startswith("uniform:"):
        amplitudes = (_parse_float("amplitudes", amp_raw[len("uniform:"):]),) * n
    else:
        amplitudes = _parse_float_list("amplitudes", amp_raw)

    phase_raw = raw["phases"]
    if phase_raw in ("coherent", "zero"):
        phases = (0.0,) * n
    else:
        phases = _parse_float_list("phases", phase_raw)

    state_raw = raw["ris_state"].lower()
    try:
        state = RisState(state_raw)
    except ValueError:
        raise OutOfRangeError("ris_state", f"expected on|off, got {state_raw!r}") from None

    mode_raw = raw.get("fading_mode", FadingMode.PER_SAMPLE.value).lower()
    try:
        fading = FadingMode(mode_raw)
    except ValueError:
        raise OutOfRangeError(
            "fading_mode", f"expected per_sample|per_block, got {mode_raw!r}"
        ) from None

    seed = _parse_int("seed", raw["seed"]) if "seed" in raw else None
    if seed is not None and seed < 0:
        raise OutOfRangeError("seed", f"must be >= 0, got {seed}")

    return ScenarioConfig(
        ris=RisConfig(n_elements=n, amplitudes=amplitudes, phases=phases, state=state),
        channel=ChannelParams(
            var_ar=_parse_float("var_ar", raw["var_ar"]),
            var_rb=_parse_float("var_rb", raw["var_rb"]),
            var_a=_parse_float("var_a", raw["var_a"]),
            var_e=_parse_float("var_e", raw["var_e"]),
            noise_var=_parse_float("noise_var", raw["noise_var"]),
        ),
        samples_per_block=_parse_int("samples_per_block", raw["samples_per_block"]),
        n_subcarriers=_parse_int("n_subcarriers", raw["n_subcarriers"]) if "n_subcarriers" in raw else 1,
        fading_mode=fading,
        seed=seed,
    )


def serialize_scenario(config: ScenarioConfig) -> str:
    """Render a document that parses back to an equal ScenarioConfig."""
    ch = config.channel
    lines = [
        f"n_elements = {config.ris.n_elements}",
        "amplitudes = " + ",".join(repr(a) for a in config.ris.amplitudes),
        "phases = " + ",".join(repr(p) for p in config.ris.phases),
        f"ris_state = {config.ris.state.value}",
        f"var_ar = {ch.var_ar!r}",
        f"var_rb = {ch.var_rb!r}",
        f"var_a = {ch.var_a!r}",
        f"var_e = {ch.var_e!r}",
        f"noise_var = {ch.noise_var!r}",
        f"samples_per_block = {config.samples_per_block}",
        f"n_subcarriers = {config.n_subcarriers}",
        f"fading_mode = {config.fading_mode.value}",
    ]
    if config.seed is not None:
        lines.append(f"seed = {config.seed}")
    return "\n".join(lines) + "\n"
