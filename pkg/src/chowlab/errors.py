"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class ChowlabError(Exception):
    exit_code = 1


class InputError(ChowlabError, ValueError):
    """Malformed input file or argument."""

    exit_code = 3


class UnsupportedDimensionError(ChowlabError, ValueError):
    """Ambient dimension above what the exact hull code handles."""

    exit_code = 4


class UnsupportedRankError(UnsupportedDimensionError):
    """Torus rank above what chamber/subdivision code handles."""


class OutsidePolytopeError(ChowlabError, ValueError):
    exit_code = 5


class PreconditionError(ChowlabError, ValueError):
    exit_code = 6


class InsufficientPrecisionError(ChowlabError, ArithmeticError):
    """A truncated series is too short to decide a leading coefficient."""

    exit_code = 7


class ChargeAssignmentError(ChowlabError, RuntimeError):
    exit_code = 8


class ScaleCapError(ChowlabError, ValueError):
    exit_code = 9


class LatticeError(ChowlabError, ValueError):
    exit_code = 10


class EmptyPolytopeError(ChowlabError, ValueError):
    exit_code = 11
