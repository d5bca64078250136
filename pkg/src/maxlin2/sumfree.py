"""Sum-free subsets of a spanning family of sparse vectors in GF(2)^n.

K is M-sum-free when no sum of two or more distinct members of K lies in M.
If M spans GF(2)^n, every vector has at most r ones and n >= r(k-1)+1, a
k-element M-sum-free subset exists and :func:`find_msum_free` builds it by
repeatedly shortening an expression of the all-ones vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import gf2
from .errors import PreconditionError


@dataclass(frozen=True)
class VectorFamily:
    n: int
    vectors: tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if len(set(self.vectors)) != len(self.vectors):
            raise PreconditionError("distinct vectors", "family contains repeated vectors")
        limit = 1 << self.n
        for v in self.vectors:
            if not 0 < v < limit:
                raise PreconditionError("0 != v in F2^n", f"vector {v:#x} is zero or exceeds dimension {self.n}")
            if gf2.popcount(v) > self.r:
                raise PreconditionError(
                    "at most r nonzeros",
                    f"vector {gf2.to_str(v, self.n)} has more than r={self.r} nonzeros",
                )

    @classmethod
    def of(cls, vectors: Sequence[int], n: int, r: int | None = None) -> "VectorFamily":
        if r is None:
            r = max((gf2.popcount(v) for v in vectors), default=1)
        return cls(n, tuple(vectors), r)


def find_msum_free(M: VectorFamily, k: int) -> list[int]:
    """Return ``k`` vectors of ``M`` forming an M-sum-free set."""
    n, r, vecs = M.n, M.r, M.vectors
    if k < 1:
        raise PreconditionError("k >= 1", f"k must be positive, got {k}")
    if n < r * (k - 1) + 1:
        raise PreconditionError("n >= r(k-1)+1", f"n < (k-1)r+1: n={n}, r={r}, k={k}")
    basis_pos = gf2.independent_rows(vecs)
    if len(basis_pos) != n:
        raise PreconditionError("M spans F2^n", f"family has rank {len(basis_pos)} < n={n}")
    if k == 1:
        return [vecs[0]]

    ones = (1 << n) - 1
    assert ones not in vecs, "all-ones vector in M although r < n"
    basis = [vecs[p] for p in basis_pos]
    idx = gf2.express_in_basis(ones, basis)
    expr = [basis_pos[i] for i in idx]  # positions in M whose sum is all-ones

    while True:
        cur = [vecs[p] for p in expr]
        members = set(expr)
        for p, v in enumerate(vecs):
            if p in members:
                continue
            dep = gf2.express_in_basis(v, cur)
            if dep is not None:
                drop = set(dep)
                expr = [p] + [q for i, q in enumerate(expr) if i not in drop]
                assert len(drop) >= 2
                break
        else:
            break
        _check_expression(vecs, expr, ones)
    s = len(expr)
    assert s * r >= n and s >= k
    return [vecs[p] for p in expr[:k]]


def _check_expression(vecs: Sequence[int], expr: Sequence[int], ones: int) -> None:
    cur = [vecs[p] for p in expr]
    acc = 0
    for v in cur:
        acc ^= v
    assert acc == ones, "expression no longer sums to the all-ones vector"
    assert gf2.rank(cur) == len(cur), "expression is linearly dependent"


def verify_msum_free(M: VectorFamily, K: Sequence[int]) -> bool:
    """Exhaustive check: no sum of >= 2 distinct members of K lies in M."""
    members = set(M.vectors)
    if not set(K) <= members:
        raise PreconditionError("K subset of M", "K contains a vector outside M")
    if len(set(K)) != len(K):
        return False
    for size in range(2, len(K) + 1):
        for combo in combinations(K, size):
            acc = 0
            for v in combo:
                acc ^= v
            if acc == 0 or acc in members:
                return False
    return True
