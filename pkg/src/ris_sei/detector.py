"""Received-signal-strength test statistic and the threshold detector.

The receiver compares the block-average power of a trusted reference
block against a freshly observed block:

    T = (1/L) sum_l |y(l)|^2
    delta = T_ref - T_obs

and declares an attack when delta exceeds the threshold (strictly; a tie
counts as normal). Turning the surface off drops the observed power under
spoofing, which makes delta large under H1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import SampleBlock
from .errors import EmptyBlockError, OutOfRangeError


@dataclass(frozen=True)
class RssValue:
    value: float
    n_samples: int


@dataclass(frozen=True)
class TestStatistic:
    delta: float
    reference: RssValue
    observed: RssValue


class Decision(Enum):
    NORMAL = "normal"
    UNDER_ATTACK = "under_attack"


def rss(block: SampleBlock) -> RssValue:
    """Block-average received power; permutation- and phase-invariant."""
    samples = block.samples
    if len(samples) == 0:
        raise EmptyBlockError("cannot compute signal strength of an empty block")
    power = samples.real**2 + samples.imag**2
    return RssValue(value=float(np.mean(power)), n_samples=len(samples))


def delta_t(reference: RssValue, observed: RssValue) -> TestStatistic:
    """Signed power drop between the reference and observed blocks."""
    return TestStatistic(
        delta=reference.value - observed.value, reference=reference, observed=observed
    )


def decide(statistic: TestStatistic, threshold: float) -> Decision:
    """UNDER_ATTACK iff delta exceeds the threshold strictly."""
    if not math.isfinite(threshold):
        raise OutOfRangeError("threshold", f"must be finite, got {threshold!r}")
    return Decision.UNDER_ATTACK if statistic.delta > threshold else Decision.NORMAL
