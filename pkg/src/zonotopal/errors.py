"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ZonotopalError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ZonotopalError, ValueError):
    pass


class NonSquare(ZonotopalError, ValueError):
    pass


class SizeMismatch(ZonotopalError, ValueError):
    pass


class IndexOutOfRange(ZonotopalError, IndexError):
    pass


class RankDeficient(ZonotopalError, ValueError):
    def __init__(self, rank: int, rows: int | None = None):
        self.rank = rank
        self.rows = rows
        msg = f"matrix has rank {rank}"
        if rows is not None:
            msg += f" but {rows} rows"
        super().__init__(msg)


class GuardExceeded(ZonotopalError):
    """A size guard protecting an exponential enumeration was exceeded."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds guard {limit}")


class NonIntegerColumns(ZonotopalError, ValueError):
    pass


class DegreeBoundViolated(ZonotopalError, RuntimeError):
    """Hilbert function nonzero past degree m; indicates a bug."""


class NotNilpotent(ZonotopalError, ValueError):
    pass


class ZeroColumn(ZonotopalError, ValueError):
    pass


class RandomnessExhausted(ZonotopalError, RuntimeError):
    pass


class NegativeMultiplicity(ZonotopalError, RuntimeError):
    """Inversion produced a negative count: a non-generic draw slipped through."""


class NotUnimodular(ZonotopalError, ValueError):
    pass


class NonWitnessableIsoMatroids(ZonotopalError, RuntimeError):
    """Isomorphic unimodular matroids without a z-equivalence witness (a bug)."""
