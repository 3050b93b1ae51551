"""Rational top forms and their residues at the points at infinity.

A top form is ``P(x) / prod(alpha_i ** d_i) dx_1 ^ ... ^ dx_r`` in the fixed
ambient coordinates, stored as a numerator polynomial and one denominator
exponent per vector of the arrangement.

The residue at a proper maximal nested set M = (S_1, ..., S_r) (phi order) is
computed in two changes of variables.  First the linear change to
``u_i = phi(S_i)``; then the monomial map ``u_i = prod_{S_j >= S_i} z_j``.  The
exponent matrix of the second map is unitriangular in the phi order, so its
Jacobian is just ``prod(u) / prod(z)``.  Every ``alpha`` becomes a monomial
times a polynomial unit, and the residue is the coefficient of
``(z_1 ... z_r) ** -1`` of the resulting Laurent series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .arrangement import Arrangement, ArrangementError
from .laurent import TruncatedSeries, invert_unit
from .linalg import det, express, inverse
from .nested import NestedSet, enumerate_proper_mns, p_map
from .polynomial import Polynomial


class ResidueError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RationalTopForm:
    numerator: Polynomial
    denominator: tuple  # one exponent per arrangement vector

    @classmethod
    def zero(cls, arr: Arrangement) -> "RationalTopForm":
        return cls(Polynomial({}, arr.rank), (0,) * len(arr))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def _lift(self, arr: Arrangement, denominator: Sequence[int]) -> Polynomial:
        extra = Polynomial.constant(1, arr.rank)
        for i, (have, want) in enumerate(zip(self.denominator, denominator)):
            if want > have:
                extra = extra * linear_form(arr, i) ** (want - have)
        return self.numerator * extra

    def add(self, arr: Arrangement, other: "RationalTopForm") -> "RationalTopForm":
        den = tuple(map(max, self.denominator, other.denominator))
        return RationalTopForm(self._lift(arr, den) + other._lift(arr, den), den)

    def scale(self, c) -> "RationalTopForm":
        return RationalTopForm(self.numerator * c, self.denominator)

    def equals(self, arr: Arrangement, other: "RationalTopForm") -> bool:
        return self.add(arr, other.scale(-1)).is_zero()

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": list(self.denominator)}

    @classmethod
    def from_json(cls, arr: Arrangement, data: dict) -> "RationalTopForm":
        den = tuple(int(d) for d in data.get("denominator", [0] * len(arr)))
        if len(den) != len(arr) or any(d < 0 for d in den):
            raise ArrangementError(
                f"denominator must list {len(arr)} nonnegative exponents, one per vector"
            )
        return cls(Polynomial.from_json(data.get("numerator", []), arr.rank), den)


def linear_form(arr: Arrangement, i: int) -> Polynomial:
    return Polynomial.linear(arr.vectors[i])


def form_of_basis(arr: Arrangement, sigma: Sequence[int]) -> RationalTopForm:
    """dlog(gamma_1) ^ ... ^ dlog(gamma_r) for the ordered basis ``sigma``."""
    if len(sigma) != arr.rank or det([arr.vectors[i] for i in sigma]) == 0:
        raise ArrangementError(f"{list(sigma)} is not a basis")
    d = det([arr.vectors[i] for i in sigma])
    den = tuple(int(i in sigma) for i in range(len(arr)))
    return RationalTopForm(Polynomial.constant(d, arr.rank), den)


def form_of_combination(arr: Arrangement, combo: Mapping[tuple, object]) -> RationalTopForm:
    """Sum of ``coef * omega_sigma`` over a mapping from ordered bases."""
    out = RationalTopForm.zero(arr)
    for sigma, c in combo.items():
        out = out.add(arr, form_of_basis(arr, sigma).scale(c))
    return out


def circuit_relation(arr: Arrangement, gammas: Sequence[int]) -> RationalTopForm:
    """Alternating sum of the omega forms obtained by dropping one of r+1 vectors."""
    gammas = list(gammas)
    if len(gammas) != arr.rank + 1 or arr.span_rank(gammas) != arr.rank:
        raise ArrangementError(f"{gammas} are not r+1 spanning vectors")
    out = RationalTopForm.zero(arr)
    for i in range(len(gammas)):
        rest = gammas[:i] + gammas[i + 1:]
        if arr.span_rank(rest) < arr.rank:
            continue
        # (-1)^i with i counted from 1
        out = out.add(arr, form_of_basis(arr, rest).scale((-1) ** (i + 1)))
    return out


def derivative_form(arr: Arrangement, q: Polynomial, k: Sequence[int], j: int) -> RationalTopForm:
    """d/dx_j of ``q / prod(alpha_i ** k_i)``, as a top form (an exact form)."""
    den_poly = Polynomial.constant(1, arr.rank)
    for i in range(len(arr)):
        den_poly = den_poly * linear_form(arr, i)
    num = q.derivative(j) * den_poly
    for i, ki in enumerate(k):
        if ki:
            others = Polynomial.constant(1, arr.rank)
            for l in range(len(arr)):
                if l != i:
                    others = others * linear_form(arr, l)
            num = num - q * others * (ki * arr.vectors[i][j])
    return RationalTopForm(num, tuple(ki + 1 for ki in k))


def substitute_alphas(arr: Arrangement, p: Polynomial) -> Polynomial:
    """Replace the formal symbol alpha_i by the linear form of vector i."""
    if p.nvars != len(arr):
        raise ArrangementError(f"polynomial in alphas needs {len(arr)} variables")
    forms = [linear_form(arr, i) for i in range(len(arr))]
    return p.substitute(forms, one=Polynomial.constant(1, arr.rank))


@dataclass(frozen=True)
class LocalFactorization:
    mns: NestedSet
    basis_det: Fraction  # det of the phi basis in ambient coordinates
    u_exponents: tuple  # u_i = z ** u_exponents[i]
    monomials: tuple  # E(alpha) for every alpha
    units: tuple  # f_alpha as polynomials in z


def local_factorization(arr: Arrangement, mns: NestedSet) -> LocalFactorization:
    if not mns.proper:
        raise ArrangementError("local coordinates need a proper nested set")
    r = arr.rank
    members = [frozenset(s) for s in mns.members]
    gammas = [arr.vectors[i] for i in mns.phi]
    u_exp = tuple(tuple(int(members[j] >= members[i]) for j in range(r)) for i in range(r))
    monos, units = [], []
    for a in range(len(arr)):
        coeffs = express(gammas, arr.vectors[a])
        used = [i for i in range(r) if coeffs[i] != 0]
        e = tuple(min(u_exp[i][j] for i in used) for j in range(r))
        unit = Polynomial(
            {tuple(x - y for x, y in zip(u_exp[i], e)): coeffs[i] for i in used}, r
        )
        if unit.terms.get((0,) * r, 0) == 0:
            raise ResidueError(f"vector {a} has no unit factor at this point")
        b = frozenset(p_map(arr, mns, a))
        expected = tuple(int(members[j] >= b) for j in range(r))
        if e != expected:
            raise ResidueError(f"monomial part of vector {a} is {e}, expected {expected}")
        monos.append(e)
        units.append(unit)
    d = det(gammas)
    return LocalFactorization(mns, d, u_exp, tuple(monos), tuple(units))


def residue(arr: Arrangement, psi: RationalTopForm, mns: NestedSet,
            factorization: LocalFactorization | None = None) -> Fraction:
    if len(psi.denominator) != len(arr):
        raise ArrangementError("form denominator does not match the arrangement")
    if psi.is_zero():
        return Fraction(0)
    lf = factorization or local_factorization(arr, mns)
    r = arr.rank
    # exponent of z_j that the rest of the integrand must supply
    need = [
        sum(d * lf.monomials[a][j] for a, d in enumerate(psi.denominator))
        - sum(lf.u_exponents[i][j] for i in range(r))
        for j in range(r)
    ]
    if any(k < 0 for k in need):
        return Fraction(0)
    caps = tuple(need)
    one = TruncatedSeries.constant(1, caps)
    # ambient x = G^-1 u, as series in z
    ginv = inverse([arr.vectors[i] for i in mns.phi])
    u = [TruncatedSeries.monomial(lf.u_exponents[i], caps) for i in range(r)]
    x = []
    for j in range(r):
        acc = TruncatedSeries({}, caps)
        for i in range(r):
            if ginv[j][i]:
                acc = acc + u[i].scale(ginv[j][i])
        x.append(acc)
    series = psi.numerator.substitute(x, one=one)
    for a, d in enumerate(psi.denominator):
        if d:
            inv = invert_unit(TruncatedSeries(lf.units[a].terms, caps))
            series = series * inv ** d
    shift = [-1 - k for k in need]
    laurent = TruncatedSeries.monomial(shift, caps) * series
    return laurent.coefficient((-1,) * r) / lf.basis_det


def pairing_matrix(arr: Arrangement) -> list[list[Fraction]]:
    mnss = enumerate_proper_mns(arr)
    lfs = [local_factorization(arr, m) for m in mnss]
    forms = [form_of_basis(arr, m.phi) for m in mnss]
    return [[residue(arr, f, m, lf) for f in forms] for m, lf in zip(mnss, lfs)]


def project(arr: Arrangement, psi: RationalTopForm) -> list[tuple[NestedSet, Fraction]]:
    """Coordinates of the cohomology part of ``psi`` in the NBC basis."""
    return [(m, residue(arr, psi, m)) for m in enumerate_proper_mns(arr)]


def reconstruct(arr: Arrangement, coords: Sequence[tuple[NestedSet, Fraction]]) -> RationalTopForm:
    out = RationalTopForm.zero(arr)
    for m, c in coords:
        if c:
            out = out.add(arr, form_of_basis(arr, m.phi).scale(c))
    return out


def all_bases(arr: Arrangement) -> list[tuple]:
    return [c for c in combinations(range(len(arr)), arr.rank) if arr.span_rank(c) == arr.rank]
