"""Exceptions raised by this package.

Every exception derives from :class:`IQuantumError` as well as from the
closest built-in exception, so callers may catch either the whole family or
the usual built-in category (e.g. :class:`ValueError`).

Verification routines do not raise when a check merely fails; they return a
report. An exception means the question could not be decided at all.
"""

__all__ = [
    'IQuantumError',
    'DivisionByZero',
    'OddHalfPower',
    'PoleAtSqrtQ',
    'NotASquare',
    'InvalidInvolution',
    'InvalidOrientation',
    'NotASink',
    'CapExceeded',
    'Unsolvable',
    'InvalidParameter',
    'RankCapExceeded',
    'SizeCapExceeded',
    'InsufficientSamples',
    'ConfigError',
]


class IQuantumError(Exception):
    """Base class of all errors raised by iquantum."""
    pass


class DivisionByZero(IQuantumError, ZeroDivisionError):
    """Attempt to invert the zero element of the scalar field."""
    pass


class OddHalfPower(IQuantumError, ValueError):
    """A scalar with an odd power of u was specialized at v = sqrt(q).

    Only elements of Q(v) have a value in Z[sqrt(q)] ⊗ Q.
    """
    pass


class PoleAtSqrtQ(IQuantumError, ZeroDivisionError):
    """The denominator of a scalar vanishes at v = sqrt(q)."""
    pass


class NotASquare(IQuantumError, ValueError):
    """The radicand is not of the form +v^m, so it has no root in Q(u)."""
    pass


class InvalidInvolution(IQuantumError, ValueError):
    """The involution is not a diagram automorphism with c_{i,τi} = 0."""
    pass


class InvalidOrientation(IQuantumError, ValueError):
    """The orientation does not orient each edge once, is cyclic, or is not
    preserved by the involution."""
    pass


class NotASink(IQuantumError, ValueError):
    """Reflection was requested at a vertex that is not a sink."""
    pass


class CapExceeded(IQuantumError, ArithmeticError):
    """Rewriting produced a word of weighted degree above the cap.

    The *args* contain the cap and the offending degree. Re-run with a larger
    cap.
    """
    pass


class Unsolvable(IQuantumError, ArithmeticError):
    """A linear system has no solution in the span of the given candidates."""
    pass


class InvalidParameter(IQuantumError, ValueError):
    """A parameter table ς is not admissible for the requested operation."""
    pass


class RankCapExceeded(IQuantumError, ValueError):
    """The bound quiver algebra would exceed the configured rank cap."""
    pass


class SizeCapExceeded(IQuantumError, ArithmeticError):
    """A finite-field enumeration would exceed the configured size cap."""
    pass


class InsufficientSamples(IQuantumError, ValueError):
    """Too few specializations to interpolate the requested degree."""
    pass


class ConfigError(IQuantumError, ValueError):
    """The run configuration is invalid."""
    pass
