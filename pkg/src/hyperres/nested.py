"""NBC bases, nested sets and the bijection between them.

Maximal nested sets are stored with their members sorted by minimum element
(the ``phi`` map).  For proper ones this is a total order refining reverse
inclusion, which is what the residue code relies on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import (
    Arrangement,
    ArrangementError,
    Subset,
    completion,
    enumerate_irreducibles,
    irreducible_components,
    is_complete,
    is_irreducible,
)


class NonNBCWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NestedSet:
    members: tuple  # tuple[Subset, ...] in phi order
    phi: tuple  # minimum of each member, same order
    proper: bool

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_json(self) -> dict | list:
        if self.proper:
            return {"members": [list(s) for s in self.members], "phi": list(self.phi)}
        return [list(s) for s in self.members]


def _member_key(s: Subset):
    return (s[0], -len(s), s)


def make_nested_set(arr: Arrangement, members: Iterable[Sequence[int]]) -> NestedSet:
    ms = sorted({tuple(sorted(s)) for s in members}, key=_member_key)
    phi = tuple(s[0] for s in ms)
    proper = len(set(phi)) == arr.rank and len(phi) == arr.rank and arr.span_rank(phi) == arr.rank
    return NestedSet(tuple(ms), phi, proper)


def _check_basis(arr: Arrangement, sigma: Sequence[int]):
    if len(sigma) != arr.rank or arr.span_rank(sigma) != arr.rank:
        raise ArrangementError(f"{list(sigma)} is not a basis")


def is_nbc_basis(arr: Arrangement, sigma: Sequence[int]) -> bool:
    sigma = tuple(sigma)
    if arr.span_rank(sigma) != len(sigma):
        raise ArrangementError(f"{list(sigma)} is linearly dependent")
    if list(sigma) != sorted(sigma):
        return False
    return all(sigma[l] == completion(arr, sigma[l:])[0] for l in range(len(sigma)))


def enumerate_nbc(arr: Arrangement) -> list[tuple]:
    out = []
    for c in combinations(range(len(arr)), arr.rank):
        if arr.span_rank(c) == arr.rank and is_nbc_basis(arr, c):
            out.append(c)
    return out


def flag_of_basis(arr: Arrangement, sigma: Sequence[int]) -> list[Subset]:
    """Levels A_i = closure of (gamma_i, ..., gamma_r); A_1 is everything."""
    _check_basis(arr, sigma)
    return [completion(arr, sigma[i:]) for i in range(len(sigma))]


def decompose_flag(arr: Arrangement, flag: Sequence[Sequence[int]]) -> list[Subset]:
    seen = []
    for level in flag:
        if not is_complete(arr, level):
            raise ArrangementError(f"flag level {list(level)} is not complete")
        for comp in irreducible_components(arr, level):
            if comp not in seen:
                seen.append(comp)
    return seen


def _antichains(family: Sequence[Subset]):
    sets = [frozenset(s) for s in family]
    n = len(family)
    for k in range(2, n + 1):
        for idx in combinations(range(n), k):
            if all(not (sets[a] <= sets[b] or sets[b] <= sets[a]) for a, b in combinations(idx, 2)):
                yield [family[i] for i in idx]


def is_nested(arr: Arrangement, family: Iterable[Sequence[int]], check: bool = True) -> bool:
    family = [tuple(sorted(s)) for s in family]
    if check:
        for s in family:
            if not is_irreducible(arr, s):
                raise ArrangementError(f"{list(s)} is not irreducible")
    for anti in _antichains(family):
        union = tuple(sorted(set().union(*anti)))
        if not is_complete(arr, union):
            return False
        if sorted(irreducible_components(arr, union)) != sorted(anti):
            return False
    return True


def enumerate_maximal_nested(arr: Arrangement) -> list[NestedSet]:
    """Depth-first search over irreducibles, largest first."""
    irr = sorted(enumerate_irreducibles(arr), key=lambda s: (-len(s), s))
    found = []

    def extendable(family):
        return any(s not in family and is_nested(arr, family + [s], check=False) for s in irr)

    def dfs(start, family):
        grew = False
        for i in range(start, len(irr)):
            cand = family + [irr[i]]
            if is_nested(arr, cand, check=False):
                grew = True
                dfs(i + 1, cand)
        if not grew and not extendable(family):
            found.append(make_nested_set(arr, family))

    dfs(0, [])
    return sorted(found, key=lambda m: (m.phi, m.members))


def phi(arr: Arrangement, mns: NestedSet | Iterable[Sequence[int]]) -> tuple:
    if not isinstance(mns, NestedSet):
        mns = make_nested_set(arr, mns)
    return mns.phi


def is_proper(arr: Arrangement, mns: NestedSet | Iterable[Sequence[int]]) -> bool:
    if not isinstance(mns, NestedSet):
        mns = make_nested_set(arr, mns)
    return mns.proper


def eta(arr: Arrangement, sigma: Sequence[int]) -> NestedSet:
    """Decomposition of the flag of ``sigma``.

    Defined for every basis; only NBC bases are guaranteed to give a proper
    nested set, and for other input a :class:`NonNBCWarning` is emitted.
    """
    sigma = tuple(sigma)
    mns = make_nested_set(arr, decompose_flag(arr, flag_of_basis(arr, sigma)))
    if not is_nbc_basis(arr, sigma):
        warnings.warn(f"{list(sigma)} is not an NBC basis", NonNBCWarning, stacklevel=2)
    return mns


def p_map(arr: Arrangement, mns: NestedSet, alpha: int) -> Subset:
    containing = [s for s in mns.members if alpha in s]
    if not containing:
        raise ArrangementError(f"no member of the nested set contains {alpha}")
    return min(containing, key=len)


def _positions(arr, sigma, mns):
    return [mns.members.index(p_map(arr, mns, a)) for a in sigma]


def is_adapted(arr: Arrangement, sigma: Sequence[int], mns: NestedSet) -> bool:
    pos = _positions(arr, sigma, mns)
    return len(set(pos)) == len(mns.members) == len(pos)


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def adaptation_sign(arr: Arrangement, sigma: Sequence[int], mns: NestedSet) -> int:
    if not is_adapted(arr, sigma, mns):
        raise ArrangementError(f"{list(sigma)} is not adapted to {mns.to_json()}")
    return permutation_sign(_positions(arr, sigma, mns))


def enumerate_proper_mns(arr: Arrangement) -> list[NestedSet]:
    return [eta(arr, s) for s in enumerate_nbc(arr)]


# -- type A encoding ---------------------------------------------------------

def _type_a_support(arr: Arrangement, s: Subset) -> tuple:
    if arr.roots is None:
        raise ArrangementError("arrangement is not a type A preset")
    return tuple(sorted({k for i in s for k in arr.roots[i]}))


def type_a_encode(arr: Arrangement, mns: NestedSet) -> list[tuple]:
    pairs = []
    for s in mns.members:
        sup = _type_a_support(arr, s)
        pairs.append((sup[0], sup[-1]))
    return pairs


def _reverse_conjugate(p: dict, block: Sequence[int]) -> dict:
    block = sorted(block)
    tau = dict(zip(block, reversed(block)))
    return {k: tau[p[tau[k]]] for k in block}


def _type_a_perm(family: list[tuple], ground: tuple) -> dict:
    if len(ground) <= 2:
        return {k: k for k in ground}
    rest = [s for s in family if s != ground]
    maximal = [s for s in rest if not any(set(s) < set(t) for t in rest)]
    first, last = ground[0], ground[-1]
    if len(maximal) == 1:
        s2 = maximal[0]
        sub = _type_a_perm([s for s in rest if set(s) <= set(s2)], s2)
        if first not in s2:
            p = {first: first}
            p.update(sub)
            return p
        p = {last: last}
        p.update(_reverse_conjugate(sub, s2))
        return p
    if len(maximal) == 2:
        s2, s3 = sorted(maximal, key=lambda s: first not in s)
        p2 = _type_a_perm([s for s in rest if set(s) <= set(s2)], s2)
        p3 = _type_a_perm([s for s in rest if set(s) <= set(s3)], s3)
        p = dict(p3)
        p.update(_reverse_conjugate(p2, s2))
        return p
    if not maximal:
        # the leftover elements are singletons, which carry no members
        return {k: k for k in ground}
    raise ArrangementError("nested set has more than two maximal members below the top")


def type_a_permutation(arr: Arrangement, mns: NestedSet) -> tuple:
    """The recursive permutation attached to a proper type A nested set.

    Returns the images of 1..n in order.
    """
    family = [_type_a_support(arr, s) for s in mns.members]
    n = arr.rank + 1
    ground = tuple(range(1, n + 1))
    if ground not in family:
        raise ArrangementError("nested set does not contain the full index set")
    p = _type_a_perm(family, ground)
    for k in ground:
        p.setdefault(k, k)
    return tuple(p[k] for k in ground)
