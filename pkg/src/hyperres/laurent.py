"""Truncated multivariate Laurent series with exact rational coefficients.

A :class:`TruncatedSeries` stands for ``sum(c_e * z**e)`` where every term of
the (possibly infinite) true series has ``e >= floor`` componentwise and the
stored coefficients are exact for every ``e`` with ``e <= cap`` componentwise.
Nothing above the caps is kept, and the caps are never raised silently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import as_fraction


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("nvars", "caps", "floor", "terms")

    def __init__(self, terms: Mapping, caps: Sequence[int], floor: Sequence[int] | None = None):
        self.nvars = len(caps)
        self.caps = tuple(int(c) for c in caps)
        self.floor = tuple(floor) if floor is not None else (0,) * self.nvars
        if len(self.floor) != self.nvars:
            raise SeriesError("floor and caps have different lengths")
        kept = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise SeriesError(f"exponent {e} has wrong length")
            if any(x < f for x, f in zip(e, self.floor)):
                raise SeriesError(f"exponent {e} lies below the floor {self.floor}")
            c = as_fraction(c)
            if c != 0 and all(x <= k for x, k in zip(e, self.caps)):
                kept[e] = c
        self.terms = kept

    @classmethod
    def constant(cls, c, caps: Sequence[int]) -> "TruncatedSeries":
        return cls({(0,) * len(caps): c}, caps)

    @classmethod
    def monomial(cls, exps: Sequence[int], caps: Sequence[int], coef=1) -> "TruncatedSeries":
        return cls({tuple(exps): coef}, caps, floor=tuple(exps))

    @classmethod
    def variable(cls, j: int, caps: Sequence[int]) -> "TruncatedSeries":
        e = [0] * len(caps)
        e[j] = 1
        return cls({tuple(e): 1}, caps)

    def _check(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars:
            raise SeriesError("series in different variable sets")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.caps)
        self._check(other)
        caps = tuple(map(min, self.caps, other.caps))
        floor = tuple(map(min, self.floor, other.floor))
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return TruncatedSeries(terms, caps, floor)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({e: -c for e, c in self.terms.items()}, self.caps, self.floor)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = as_fraction(c)
        return TruncatedSeries({e: c * v for e, v in self.terms.items()}, self.caps, self.floor)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        # a product coefficient is exact only where both factors are known
        caps = tuple(
            min(ca + fb, cb + fa)
            for ca, cb, fa, fb in zip(self.caps, other.caps, self.floor, other.floor)
        )
        floor = tuple(map(sum, zip(self.floor, other.floor)))
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(map(sum, zip(ea, eb)))
                if all(x <= k for x, k in zip(e, caps)):
                    terms[e] = terms.get(e, 0) + ca * cb
        return TruncatedSeries(terms, caps, floor)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return invert_unit(self) ** (-k)
        out = TruncatedSeries.constant(1, self.caps)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.caps == other.caps and self.terms == other.terms

    def truncate(self, caps: Sequence[int]) -> "TruncatedSeries":
        caps = tuple(map(min, self.caps, caps))
        return TruncatedSeries(self.terms, caps, self.floor)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        exps = tuple(exps)
        if any(x > k for x, k in zip(exps, self.caps)):
            raise SeriesError(f"exponent {exps} exceeds the retained caps {self.caps}")
        if any(x < f for x, f in zip(exps, self.floor)):
            return Fraction(0)
        return self.terms.get(exps, Fraction(0))

    def dump(self) -> str:
        lines = []
        for e in sorted(self.terms):
            mono = "*".join(f"z{i + 1}^{x}" for i, x in enumerate(e) if x) or "1"
            lines.append(f"{self.terms[e]} * {mono}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TruncatedSeries({self.terms!r}, caps={self.caps}, floor={self.floor})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def invert_unit(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a power series with nonzero constant term, to the same caps."""
    if any(f != 0 for f in a.floor):
        a = TruncatedSeries(a.terms, a.caps)  # raises if a term sits below zero
    zero = (0,) * a.nvars
    c0 = a.terms.get(zero, Fraction(0))
    if c0 == 0:
        raise SeriesError("series has zero constant term and is not a unit")
    # b = c0^-1 * sum_k (-h)^k with h = a/c0 - 1; h has no constant term so
    # the sum stops once the total degree exceeds sum(caps)
    h = TruncatedSeries({e: c / c0 for e, c in a.terms.items() if e != zero}, a.caps)
    out = TruncatedSeries.constant(1, a.caps)
    power = TruncatedSeries.constant(1, a.caps)
    for _ in range(sum(a.caps)):
        power = power * (-h)
        if not power.terms:
            break
        out = out + power
    return out.scale(1 / c0)


def series_invert_unit(a: TruncatedSeries) -> TruncatedSeries:
    return invert_unit(a)


def coefficient(a: TruncatedSeries, exps: Sequence[int]) -> Fraction:
    return a.coefficient(exps)
