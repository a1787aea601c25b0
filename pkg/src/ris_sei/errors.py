"""Exception types raised across the package.

Every error carries a human-readable message naming the offending key,
field, or file; the CLI maps them to exit code 2.
"""


class RisSeiError(Exception):
    """Base class for all package errors."""


class ScenarioError(RisSeiError, ValueError):
    """Base class for scenario-document problems."""


class MissingKeyError(ScenarioError):
    """A required scenario key is absent."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"missing required key: {key!r}")


class OutOfRangeError(ScenarioError):
    """A value violates its documented domain."""

    def __init__(self, key: str, detail: str):
        self.key = key
        super().__init__(f"value out of range for {key!r}: {detail}")


class MalformedDocumentError(ScenarioError):
    """The document or a value cannot be parsed at all."""


class LengthMismatchError(RisSeiError, ValueError):
    """Per-element arrays disagree in length."""


class EmptyBlockError(RisSeiError, ValueError):
    """A sample block with zero samples was given where data is required."""


class DomainError(RisSeiError, ValueError):
    """A math function argument lies outside its open domain."""


class DegenerateDistributionError(RisSeiError, ValueError):
    """A distribution has zero variance where a spread is required."""


class NegativeVarianceError(RisSeiError, ValueError):
    """A closed-form variance evaluated negative (invalid parameter set)."""


class InsufficientTrialsError(RisSeiError, ValueError):
    """Too few Monte-Carlo trials for the requested estimate."""


class UnknownExperimentError(RisSeiError, ValueError):
    """Experiment name is not one of the provided presets."""


class TraceError(RisSeiError):
    """Base class for trace-file problems."""


class BadMagicError(TraceError):
    """File does not start with the trace magic bytes."""


class TruncatedPayloadError(TraceError):
    """Payload is shorter than the header-declared sample count."""


class UnreadablePathError(TraceError, OSError):
    """Path cannot be opened or read."""
