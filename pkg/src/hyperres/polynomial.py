"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import as_fraction, format_rational, parse_rational


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping, nvars: int):
        self.nvars = nvars
        kept = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {nvars} variables")
            c = as_fraction(c)
            if c:
                kept[e] = kept.get(e, 0) + c
        self.terms = {e: c for e, c in kept.items() if c}

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls({tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial({e: c * v for e, v in self.terms.items()}, self.nvars)
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                terms[e] = terms.get(e, 0) + ca * cb
        return Polynomial(terms, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def derivative(self, j: int) -> "Polynomial":
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                terms[tuple(f)] = c * e[j]
        return Polynomial(terms, self.nvars)

    def substitute(self, values: Sequence, one=None):
        """Evaluate with ``values[j]`` in place of variable ``j``.

        ``values`` may be anything supporting ``+``, ``*`` and ``**``
        (polynomials, series, numpy arrays).
        """
        acc = None
        for e, c in self.terms.items():
            term = None
            for v, x in zip(values, e):
                if x:
                    f = v ** x
                    term = f if term is None else term * f
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return 0 if one is None else one * 0
        return acc

    def to_json(self) -> list:
        return [
            {"exps": list(e), "coef": format_rational(c)}
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data, nvars: int) -> "Polynomial":
        terms: dict = {}
        for t in data:
            e = tuple(int(x) for x in t["exps"])
            if len(e) != nvars:
                raise ValueError(f"monomial {list(e)} needs {nvars} exponents")
            terms[e] = terms.get(e, 0) + parse_rational(t["coef"])
        return cls(terms, nvars)

    def __repr__(self):
        return f"Polynomial({self.terms!r}, {self.nvars})"
