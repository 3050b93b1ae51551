"""Central arrangements, completion and irreducible decomposition.

A subset of the arrangement is always a sorted tuple of 0-based indices into
``Arrangement.vectors``; the list order of the vectors is the total order used
everywhere else (NBC bases, minima of irreducibles, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import as_fraction, express, format_rational, parse_rational, rank

Subset = tuple  # sorted tuple[int, ...]


class ArrangementError(ValueError):
    """Invalid arrangement data or a violated precondition."""


@dataclass(frozen=True, eq=False)
class Arrangement:
    vectors: tuple
    rank: int
    # (i, j) root labels, only set by type_a_preset
    roots: tuple | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.vectors)

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self.vectors == other.vectors

    def __hash__(self):
        return hash(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    @property
    def everything(self) -> Subset:
        return tuple(range(len(self.vectors)))

    def span_rank(self, s: Iterable[int]) -> int:
        return rank([self.vectors[i] for i in s])

    @cached_property
    def _closure_cache(self) -> dict:
        return {}

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "vectors": [[format_rational(x) for x in v] for v in self.vectors],
        }
        if self.roots is not None:
            out["roots"] = [list(p) for p in self.roots]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        if not isinstance(data, dict) or "vectors" not in data:
            raise ArrangementError("arrangement JSON needs a 'vectors' field")
        vectors = [[parse_rational(x) for x in v] for v in data["vectors"]]
        arr = validate(vectors, data.get("rank"))
        if data.get("roots") is not None:
            roots = tuple(tuple(int(i) for i in p) for p in data["roots"])
            if len(roots) != len(arr.vectors):
                raise ArrangementError("'roots' must label every vector")
            arr = Arrangement(arr.vectors, arr.rank, roots)
        return arr


def validate(raw: Sequence[Sequence], r: int | None = None) -> Arrangement:
    """Check the standing assumptions and build an :class:`Arrangement`.

    ``r`` is the ambient dimension; it defaults to the vector length.
    """
    vectors = tuple(tuple(as_fraction(x) for x in v) for v in raw)
    if r is None:
        if not vectors:
            raise ArrangementError("empty arrangement needs an explicit rank")
        r = len(vectors[0])
    if any(len(v) != r for v in vectors):
        raise ArrangementError(f"all vectors must have length {r}")
    for i, v in enumerate(vectors):
        if all(x == 0 for x in v):
            raise ArrangementError(f"vector {i} is zero")
    for i, j in combinations(range(len(vectors)), 2):
        if rank([vectors[i], vectors[j]]) < 2:
            raise ArrangementError(f"vectors {i} and {j} are proportional")
    achieved = rank(vectors) if vectors else 0
    if achieved != r:
        raise ArrangementError(f"vectors span rank {achieved}, expected {r}")
    return Arrangement(vectors, r)


def type_a_preset(n: int) -> Arrangement:
    """Positive roots of A_{n-1} in simple-root coordinates.

    x_i - x_j becomes e_i + ... + e_{j-1}.  Longer roots come first, ties are
    broken by the smaller starting index.
    """
    if n < 2:
        raise ArrangementError("type A preset needs n >= 2")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    pairs.sort(key=lambda p: (-(p[1] - p[0]), p[0]))
    vectors = [tuple(int(i <= k < j) for k in range(1, n)) for i, j in pairs]
    arr = validate(vectors, n - 1)
    return Arrangement(arr.vectors, arr.rank, tuple(pairs))


def _span_contains(arr: Arrangement, s: Sequence[int], base_rank: int, i: int) -> bool:
    return arr.span_rank(list(s) + [i]) == base_rank


def completion(arr: Arrangement, s: Iterable[int]) -> Subset:
    s = tuple(sorted(set(s)))
    cache = arr._closure_cache
    if s in cache:
        return cache[s]
    if not s:
        out = ()
    else:
        # a basis of the span is enough to test membership
        basis: list[int] = []
        for i in s:
            if arr.span_rank(basis + [i]) > len(basis):
                basis.append(i)
        k = len(basis)
        out = tuple(i for i in range(len(arr)) if i in s or _span_contains(arr, basis, k, i))
    cache[s] = out
    return out


def is_complete(arr: Arrangement, s: Iterable[int]) -> bool:
    s = tuple(sorted(set(s)))
    return completion(arr, s) == s


def irreducible_components(arr: Arrangement, s: Iterable[int]) -> list[Subset]:
    """Finest direct-sum partition of a complete subset, ordered by least index."""
    s = tuple(sorted(set(s)))
    if not is_complete(arr, s):
        raise ArrangementError(f"subset {list(s)} is not complete")
    # Two elements share a component iff some circuit contains both; the
    # fundamental circuits with respect to one basis of S already generate
    # this relation.
    parent = {i: i for i in s}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    basis: list[int] = []
    for i in s:
        if arr.span_rank(basis + [i]) > len(basis):
            basis.append(i)
    for e in s:
        if e in basis:
            continue
        coeffs = express([arr.vectors[b] for b in basis], arr.vectors[e])
        for b, c in zip(basis, coeffs):
            if c != 0:
                parent[find(b)] = find(e)
    groups: dict[int, list[int]] = {}
    for i in s:
        groups.setdefault(find(i), []).append(i)
    blocks = [tuple(g) for g in groups.values()]
    return sorted(blocks, key=lambda blk: blk[0])


def is_irreducible(arr: Arrangement, s: Iterable[int]) -> bool:
    s = tuple(sorted(set(s)))
    if not s or not is_complete(arr, s):
        return False
    return len(irreducible_components(arr, s)) == 1


def flats(arr: Arrangement) -> list[Subset]:
    """All nonempty complete subsets, as closures of independent subsets."""
    found = set()
    m = len(arr)
    for k in range(1, arr.rank + 1):
        for c in combinations(range(m), k):
            if arr.span_rank(c) == k:
                found.add(completion(arr, c))
    return sorted(found)


def enumerate_irreducibles(arr: Arrangement) -> list[Subset]:
    found = [s for s in flats(arr) if is_irreducible(arr, s)]
    return sorted(found, key=lambda s: (len(s), s))
