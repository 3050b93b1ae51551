"""Independent oracles for the exact engines.

Floating point lives only here.  The contour integral evaluates the form on
the torus |z_S| = epsilon through the coordinate map, without any series
expansion; the brute-force searches rebuild irreducibility and maximal nested
sets from rank computations alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .arrangement import Arrangement, ArrangementError
from .linalg import inverse
from .nested import NestedSet
from .residue import RationalTopForm, local_factorization


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    epsilon: float = 0.125
    grid: int = 64
    tolerance: float = 1e-6

    def __post_init__(self):
        if not self.epsilon > 0 or self.grid < 1 or not self.tolerance > 0:
            raise ValueError("epsilon and tolerance must be positive, grid at least 1")


def check_epsilon(arr: Arrangement, mns: NestedSet, epsilon: float) -> None:
    """Certify that every unit f_alpha stays away from 0 on |z_S| <= epsilon."""
    lf = local_factorization(arr, mns)
    eps = Fraction(epsilon)
    zero = (0,) * arr.rank
    for a, unit in enumerate(lf.units):
        c0 = abs(unit.terms[zero])
        tail = sum((abs(c) * eps ** sum(e) for e, c in unit.terms.items() if e != zero), Fraction(0))
        if c0 - tail <= 0:
            raise OracleError(
                f"epsilon={epsilon} too large: unit of vector {a} may vanish on the polydisk"
            )


def _eval_poly(poly, xs, shape):
    out = np.zeros(shape, dtype=complex)
    for e, c in poly.terms.items():
        term = np.full(shape, float(c), dtype=complex)
        for x, k in zip(xs, e):
            if k:
                term = term * x ** k
        out = out + term
    return out


def numeric_cycle_integral(arr: Arrangement, psi: RationalTopForm, mns: NestedSet,
                           spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """Periodic trapezoid rule for (2 pi i)^-r times the integral over the torus cycle."""
    check_epsilon(arr, mns, spec.epsilon)
    r = arr.rank
    lf = local_factorization(arr, mns)
    theta = 2 * np.pi * np.arange(spec.grid) / spec.grid
    grids = np.meshgrid(*([theta] * r), indexing="ij")
    z = [spec.epsilon * np.exp(1j * t) for t in grids]
    shape = grids[0].shape
    u = []
    for i in range(r):
        ui = np.ones(shape, dtype=complex)
        for j in range(r):
            if lf.u_exponents[i][j]:
                ui = ui * z[j]
        u.append(ui)
    ginv = [[float(x) for x in row] for row in inverse([arr.vectors[i] for i in mns.phi])]
    x = [sum(ginv[j][i] * u[i] for i in range(r)) for j in range(r)]
    value = _eval_poly(psi.numerator, x, shape)
    for a, d in enumerate(psi.denominator):
        if d:
            alpha = sum(float(v) * xj for v, xj in zip(arr.vectors[a], x))
            value = value / alpha ** d
    # dx = det(G^-1) du, du = prod(u)/prod(z) dz, and dz_j = i z_j dtheta_j
    jac = 1.0 / float(lf.basis_det)
    for ui in u:
        value = value * ui
    value = value * jac
    if not np.all(np.isfinite(value)):
        raise OracleError("non-finite value on the integration torus")
    return complex(value.mean())


# -- brute force combinatorics ---------------------------------------------

def _rank(arr, s):
    return arr.span_rank(s)


def _is_complete(arr, s):
    k = _rank(arr, s)
    return all(a in s or _rank(arr, list(s) + [a]) > k for a in range(len(arr)))


def brute_irreducibility(arr: Arrangement, s: Sequence[int], limit: int = 20):
    """Try every bipartition.  Returns ``(True, None)`` or ``(False, (S1, S2))``."""
    s = tuple(sorted(s))
    if len(s) > limit:
        raise OracleError(f"subset of size {len(s)} exceeds the brute-force bound {limit}")
    if not _is_complete(arr, s):
        raise ArrangementError(f"{list(s)} is not complete")
    total = _rank(arr, s)
    head, tail = s[0], s[1:]
    for k in range(len(tail)):
        for extra in combinations(tail, k):
            s1 = (head,) + extra
            s2 = tuple(i for i in s if i not in s1)
            if _rank(arr, s1) + _rank(arr, s2) == total:
                return False, (s1, s2)
    return True, None


def brute_components(arr: Arrangement, s: Sequence[int]) -> list[tuple]:
    ok, split = brute_irreducibility(arr, s)
    if ok:
        return [tuple(sorted(s))]
    return sorted(brute_components(arr, split[0]) + brute_components(arr, split[1]))


def brute_irreducibles(arr: Arrangement, limit: int = 14) -> list[tuple]:
    m = len(arr)
    if m > limit:
        raise OracleError(f"{m} vectors exceed the brute-force bound {limit}")
    out = []
    for k in range(1, m + 1):
        for s in combinations(range(m), k):
            if _is_complete(arr, s) and brute_irreducibility(arr, s)[0]:
                out.append(s)
    return out


def brute_is_nested(arr: Arrangement, family: Sequence[tuple]) -> bool:
    sets = [frozenset(f) for f in family]
    for k in range(2, len(family) + 1):
        for idx in combinations(range(len(family)), k):
            if any(sets[a] <= sets[b] or sets[b] <= sets[a] for a, b in combinations(idx, 2)):
                continue
            union = tuple(sorted(frozenset().union(*(sets[i] for i in idx))))
            if not _is_complete(arr, union):
                return False
            if brute_components(arr, union) != sorted(tuple(sorted(family[i])) for i in idx):
                return False
    return True


def brute_maximal_nested(arr: Arrangement, limit: int = 25) -> list[frozenset]:
    """All maximal nested families, built level by level over every subfamily."""
    irr = brute_irreducibles(arr)
    if len(irr) > limit:
        raise OracleError(f"{len(irr)} irreducibles exceed the brute-force bound {limit}")
    level = [()]
    maximal = []
    while level:
        nxt = []
        for fam in level:
            start = fam[-1] + 1 if fam else 0
            grown = False
            for i in range(len(irr)):
                if i in fam:
                    continue
                cand = tuple(sorted(fam + (i,)))
                if brute_is_nested(arr, [irr[j] for j in cand]):
                    grown = True
                    if i >= start:
                        nxt.append(cand)
            if not grown and fam:
                maximal.append(frozenset(irr[j] for j in fam))
        level = nxt
    return maximal
