"""Truncated Laurent series over the rationals.

A :class:`TruncSeries` stands for ``sum_i coeffs[i] * t^(shift + i) + O(t^prec)``
with ``prec = shift + len(coeffs)``. Every operation tracks the absolute
precision of its result, so a coefficient that the truncation cannot
determine raises :class:`InsufficientPrecisionError` instead of silently
reading zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import InsufficientPrecisionError
from .linalg import rat

DEFAULT_ORDER = 8
# Precision standing in for an exact zero (off-diagonal entries of a torus path).
EXACT_ZERO = 10**6


@dataclass(frozen=True)
class TruncSeries:
    coeffs: tuple[Fraction, ...]
    shift: int = 0

    @classmethod
    def make(cls, coeffs: Sequence, shift: int = 0) -> "TruncSeries":
        return cls(tuple(rat(c) for c in coeffs), shift)

    @classmethod
    def zero(cls, prec: int) -> "TruncSeries":
        """``O(t^prec)``: nothing known except that the series vanishes below ``prec``."""
        return cls((), prec)

    @classmethod
    def monomial(cls, c, e: int, order: int = DEFAULT_ORDER) -> "TruncSeries":
        """``c * t^e`` known to relative order ``order``."""
        return cls((rat(c),) + (Fraction(0),) * (order - 1), e)

    @property
    def prec(self) -> int:
        return self.shift + len(self.coeffs)

    @property
    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient, or None if none is known."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.shift + i
        return None

    def coefficient(self, e: int) -> Fraction:
        if e >= self.prec:
            raise InsufficientPrecisionError(f"coefficient of t^{e} is beyond O(t^{self.prec})")
        if e < self.shift:
            return Fraction(0)
        return self.coeffs[e - self.shift]

    def truncate(self, prec: int) -> "TruncSeries":
        prec = min(prec, self.prec)
        if prec <= self.shift:
            return TruncSeries.zero(prec)
        return TruncSeries(self.coeffs[: prec - self.shift], self.shift)

    def _dense(self, lo: int, hi: int) -> list[Fraction]:
        return [self.coefficient(e) if e < self.prec else Fraction(0) for e in range(lo, hi)]

    def __add__(self, other) -> "TruncSeries":
        other = _coerce(other, self)
        prec = min(self.prec, other.prec)
        lo = min(self.shift, other.shift, prec)
        return TruncSeries(
            tuple(a + b for a, b in zip(self._dense(lo, prec), other._dense(lo, prec))), lo
        )

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-c for c in self.coeffs), self.shift)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-_coerce(other, self))

    def __rsub__(self, other) -> "TruncSeries":
        return _coerce(other, self) - self

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries(tuple(c * other for c in self.coeffs), self.shift)
        va = self.valuation if self.valuation is not None else self.prec
        vb = other.valuation if other.valuation is not None else other.prec
        prec = min(va + other.prec, vb + self.prec)
        lo = self.shift + other.shift
        if prec <= lo or not self.coeffs or not other.coeffs:
            return TruncSeries.zero(prec)
        out = [Fraction(0)] * (prec - lo)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= len(out):
                    break
                out[i + j] += a * b
        return TruncSeries(tuple(out), lo)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        v = self.valuation
        if v is None:
            raise InsufficientPrecisionError("cannot invert a series with no known nonzero term")
        unit = self.coeffs[v - self.shift :]
        n = len(unit)
        inv = [Fraction(0)] * n
        inv[0] = 1 / unit[0]
        for i in range(1, n):
            inv[i] = -sum(unit[j] * inv[i - j] for j in range(1, i + 1)) / unit[0]
        return TruncSeries(tuple(inv), -v)

    def __truediv__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __repr__(self) -> str:
        terms = [f"{c}*t^{self.shift + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms + [f"O(t^{self.prec})"])


def _coerce(x, like: TruncSeries) -> TruncSeries:
    if isinstance(x, TruncSeries):
        return x
    c = rat(x)
    n = max(like.prec, 1)
    return TruncSeries((c,) + (Fraction(0),) * (n - 1), 0)


def exp_series(j, order: int = DEFAULT_ORDER) -> TruncSeries:
    """``e^{j t}`` truncated to ``O(t^order)``."""
    j = rat(j)
    return TruncSeries(tuple(j**k / factorial(k) for k in range(order)), 0)


def constant(c, order: int = DEFAULT_ORDER) -> TruncSeries:
    return TruncSeries.monomial(c, 0, order)


Column = tuple[TruncSeries, ...]


@dataclass(frozen=True)
class GroupPath:
    """A square matrix of series acting on columns."""

    entries: tuple[tuple[TruncSeries, ...], ...]

    def apply(self, col: Sequence[TruncSeries]) -> Column:
        if len(col) != len(self.entries):
            raise ValueError("column and matrix sizes differ")
        out = []
        for row in self.entries:
            acc = None
            for g, x in zip(row, col):
                term = g * x
                acc = term if acc is None else acc + term
            out.append(acc)
        return tuple(out)

    @classmethod
    def diagonal(cls, exps: Sequence[int], order: int = DEFAULT_ORDER) -> "GroupPath":
        n = len(exps)
        return cls(
            tuple(
                tuple(
                    TruncSeries.monomial(1, exps[i], order) if i == j else TruncSeries.zero(EXACT_ZERO)
                    for j in range(n)
                )
                for i in range(n)
            )
        )


def projective_limit(col: Sequence[TruncSeries]) -> tuple[Fraction, ...]:
    """Constant terms after dividing the column by ``t`` to its least valuation."""
    vals = [s.valuation for s in col if s.valuation is not None]
    if not vals:
        raise InsufficientPrecisionError("no coordinate has a known nonzero term")
    v = min(vals)
    for s in col:
        if s.prec <= v:
            raise InsufficientPrecisionError(
                f"a coordinate is only known to O(t^{s.prec}), which does not reach t^{v}"
            )
    return tuple(s.coefficient(v) for s in col)


def series_limit(config: Sequence[Sequence[TruncSeries]]) -> list[tuple[Fraction, ...]]:
    return [projective_limit(col) for col in config]


def normalize(point: Sequence) -> tuple[Fraction, ...]:
    """Projective representative whose last nonzero coordinate is 1."""
    p = [rat(x) for x in point]
    last = next((x for x in reversed(p) if x != 0), None)
    if last is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(x / last for x in p)


def proportional(u: Sequence, v: Sequence) -> bool:
    return normalize(u) == normalize(v)
