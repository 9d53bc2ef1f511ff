"""Hierarchy of domain exceptions for qwalk-lab."""

from __future__ import annotations


class QWalkLabError(Exception):
    """Base exception for all qwalk-lab errors."""


class DimensionMismatchError(QWalkLabError):
    """Operands live on spaces of different dimension."""


class NormalizationError(QWalkLabError):
    """State is too far from unit norm (or unit trace) to be renormalized."""


class GraphError(QWalkLabError):
    """Graph is not regular, its labelling is inconsistent, or it has self-loops."""


class CoinError(QWalkLabError):
    """Coin kind or dimension is invalid, or the coin is not unitary."""


class NonUnitaryError(QWalkLabError):
    """Operator that must be unitary fails the unitarity check."""


class CapacityExceededError(QWalkLabError):
    """Requested dense or vectorized representation exceeds the configured cap."""


class SpectralError(QWalkLabError):
    """Spectral decomposition failed its residual check."""


class RelaxationUndefinedError(QWalkLabError):
    """Relaxation time requested for a spectrum with a single distinct eigenvalue."""


class InvalidParameterError(QWalkLabError):
    """Numeric parameter lies outside its admissible range."""


class HypothesisViolationError(InvalidParameterError):
    """Inputs violate the hypotheses under which a bound holds."""


class StepBudgetExceededError(QWalkLabError):
    """Brute-force evaluation would exceed the configured step budget."""


class ChannelError(QWalkLabError):
    """Channel parameters do not define a trace-preserving completely-positive map."""


class StationaryDensityError(QWalkLabError):
    """No fixed point of the channel could be resolved within tolerance."""


class UnknownEntryError(QWalkLabError):
    """Referenced graph family, walk kind or candidate family is not registered."""


class SpecParseError(QWalkLabError):
    """A textual graph, family or channel specifier could not be parsed."""
