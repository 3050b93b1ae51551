"""Jeffrey-Kirwan residues from the cycle decomposition.

A chamber is represented by one regular point ``c``.  The JK functional is the
signed sum of residues over the proper nested sets whose phi-cone contains
``c``; :func:`jk_oracle_laplace` computes the same number by evaluating the
inverse Laplace transform (signed cone indicators) at ``c`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .arrangement import Arrangement, ArrangementError, completion
from .linalg import as_fraction, det, express, rank, solve
from .nested import NestedSet, enumerate_proper_mns
from .polynomial import Polynomial
from .residue import RationalTopForm, project, residue, substitute_alphas


class ChamberError(ArrangementError):
    pass


def _standard_basis(r: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class OrientationContext:
    xi: tuple  # reference ordered basis
    lattice: tuple  # lattice basis

    @classmethod
    def standard(cls, r: int) -> "OrientationContext":
        e = _standard_basis(r)
        return cls(e, e)

    def __post_init__(self):
        for name in ("xi", "lattice"):
            b = getattr(self, name)
            if det(b) == 0:
                raise ChamberError(f"{name} basis is singular")


def is_regular(arr: Arrangement, c: Sequence) -> bool:
    c = tuple(as_fraction(x) for x in c)
    r = arr.rank
    if all(x == 0 for x in c):
        return False
    # c is regular iff it avoids every hyperplane spanned by a rank r-1 flat
    seen = set()
    for s in combinations(range(len(arr)), r - 1):
        if arr.span_rank(s) != r - 1:
            continue
        flat = completion(arr, s)
        if flat in seen:
            continue
        seen.add(flat)
        if rank([arr.vectors[i] for i in s] + [c]) == r - 1:
            return False
    return True


def cone_contains(arr: Arrangement, sigma: Sequence[int], c: Sequence) -> bool:
    coeffs = express([arr.vectors[i] for i in sigma], [as_fraction(x) for x in c])
    return coeffs is not None and all(a > 0 for a in coeffs)


def nu_sign(ctx: OrientationContext, tau: Sequence[Sequence]) -> int:
    """+1 when the ordered basis ``tau`` is oriented like ``ctx.xi``."""
    d = det(tau) * det(ctx.xi)
    if d == 0:
        raise ChamberError("not a basis")
    return 1 if d > 0 else -1


def basis_sign(arr: Arrangement, ctx: OrientationContext, sigma: Sequence[int]) -> int:
    return nu_sign(ctx, [arr.vectors[i] for i in sigma])


def lattice_index(ctx: OrientationContext, sigma: Sequence[Sequence]) -> Fraction:
    coords = []
    for v in sigma:
        x = express(ctx.lattice, v)
        if x is None or any(a.denominator != 1 for a in x):
            raise ChamberError(f"{[str(a) for a in v]} is not in the lattice")
        coords.append(x)
    d = abs(det(coords))
    if d == 0:
        raise ChamberError("not a basis")
    return d


def positive_functional(arr: Arrangement) -> tuple | None:
    """A linear functional positive on every vector, or None if none exists.

    The region {l : l(alpha) >= 1 for all alpha} is pointed because the
    vectors span, so it is nonempty iff one of its vertices exists; vertices
    are solutions of r tight constraints taken from a basis.
    """
    r = arr.rank
    for s in combinations(range(len(arr)), r):
        rows = [arr.vectors[i] for i in s]
        if det(rows) == 0:
            continue
        ell = solve(rows, [Fraction(1)] * r)
        if all(sum(a * b for a, b in zip(v, ell)) >= 1 for v in arr.vectors):
            return ell
    return None


def _check_chamber(arr: Arrangement, c) -> tuple:
    c = tuple(as_fraction(x) for x in c)
    if len(c) != arr.rank:
        raise ChamberError(f"point needs {arr.rank} coordinates")
    if not is_regular(arr, c):
        raise ChamberError(f"{[str(x) for x in c]} is not a regular vector")
    if positive_functional(arr) is None:
        raise ChamberError("the vectors do not lie in an open half-space")
    return c


def delta_decomposition(arr: Arrangement, ctx: OrientationContext, c) -> list[tuple[NestedSet, int]]:
    c = _check_chamber(arr, c)
    return [
        (m, basis_sign(arr, ctx, m.phi))
        for m in enumerate_proper_mns(arr)
        if cone_contains(arr, m.phi, c)
    ]


def jk_terms(arr: Arrangement, ctx: OrientationContext, c, psi: RationalTopForm):
    """The decomposition with each nested set's residue attached."""
    return [(m, s, residue(arr, psi, m)) for m, s in delta_decomposition(arr, ctx, c)]


def jk_residue(arr: Arrangement, ctx: OrientationContext, c, psi: RationalTopForm) -> Fraction:
    return sum((s * res for _, s, res in jk_terms(arr, ctx, c, psi)), Fraction(0))


def jk_oracle_laplace(arr: Arrangement, ctx: OrientationContext, c,
                      psi: RationalTopForm | Mapping[tuple, object]) -> Fraction:
    """Evaluate the signed cone indicators of the inverse Laplace transform at c.

    ``psi`` is either a mapping ``{ordered basis: coefficient}`` standing for
    ``sum(coef * omega_sigma)``, evaluated directly as
    ``sum(coef * nu_sigma * [c in C(sigma)])``, or a rational top form, which
    is first expanded in the NBC basis.
    """
    c = _check_chamber(arr, c)
    if isinstance(psi, RationalTopForm):
        combo = {m.phi: t for m, t in project(arr, psi)}
    else:
        combo = dict(psi)
    total = Fraction(0)
    for sigma, coef in combo.items():
        if coef and cone_contains(arr, sigma, c):
            total += as_fraction(coef) * basis_sign(arr, ctx, sigma)
    return total


def intersection_form(arr: Arrangement, p: Polynomial) -> RationalTopForm:
    """``P(alpha) / (alpha_1 ... alpha_m) dx`` for a polynomial in the alpha symbols."""
    return RationalTopForm(substitute_alphas(arr, p), (1,) * len(arr))


def intersection_number(arr: Arrangement, ctx: OrientationContext, c, p: Polynomial) -> Fraction:
    return jk_residue(arr, ctx, c, intersection_form(arr, p))
