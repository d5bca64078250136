"""Dense linear algebra over GF(2) with Python ints as bitsets.

A bit vector of dimension n is an ``int`` whose bit ``i - 1`` holds coordinate
``i`` (coordinates are 1-based, matching the variables x_1..x_n).  Pivoting is
always greedy lowest-index so every result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, PreconditionError


def bits(s: str) -> int:
    """Parse ``"110"`` (coordinate 1 first) into a bitset."""
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return v


def to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def support(v: int) -> list[int]:
    """1-based coordinates of the nonzero entries of ``v``."""
    out = []
    i = 1
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def from_support(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v |= 1 << (i - 1)
    return v


def popcount(v: int) -> int:
    return bin(v).count("1")


def parity(v: int) -> int:
    return popcount(v) & 1


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    n_cols: int

    def __post_init__(self):
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise DimensionError(f"row {r:#x} does not fit in {self.n_cols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], n_cols: int | None = None) -> "BitMatrix":
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise DimensionError("rows of unequal length")
        return cls(tuple(bits(r) for r in rows), n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> int:
        """Column ``j`` (1-based) as a bitset over the rows."""
        mask = 1 << (j - 1)
        c = 0
        for i, r in enumerate(self.rows):
            if r & mask:
                c |= 1 << i
        return c

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.column(j) for j in range(1, self.n_cols + 1)), self.n_rows)

    def mul(self, y: int) -> int:
        """Matrix-vector product over GF(2); result bit i is row i dotted with y."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & y):
                out |= 1 << i
        return out


class _Eliminator:
    """Incremental row echelon form keyed by lowest set bit."""

    def __init__(self):
        self.pivots: dict[int, int] = {}  # lowest-bit mask -> reduced row

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            p = self.pivots.get(low)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v & -v] = v
        return True


def rank(m: BitMatrix | Sequence[int]) -> int:
    rows = m.rows if isinstance(m, BitMatrix) else m
    e = _Eliminator()
    return sum(1 for r in rows if e.add(r))


def independent_rows(rows: Sequence[int]) -> list[int]:
    """Positions (0-based) of the greedy lowest-index maximal independent subset."""
    e = _Eliminator()
    return [i for i, r in enumerate(rows) if e.add(r)]


def independent_columns(m: BitMatrix) -> list[int]:
    """Greedy lowest-index column basis, as 1-based column indices."""
    cols = [m.column(j) for j in range(1, m.n_cols + 1)]
    return [i + 1 for i in independent_rows(cols)]


def express_in_basis(target: int, basis: Sequence[int]) -> list[int] | None:
    """Positions in ``basis`` whose XOR is ``target``; ``None`` if outside the span.

    Raises PreconditionError when ``basis`` is linearly dependent.
    """
    # each pivot row carries a tag recording which basis vectors it combines
    pivots: dict[int, tuple[int, int]] = {}
    for pos, v in enumerate(basis):
        tag = 1 << pos
        while v:
            low = v & -v
            if low not in pivots:
                break
            pv, ptag = pivots[low]
            v ^= pv
            tag ^= ptag
        if not v:
            raise PreconditionError("basis is linearly dependent")
        pivots[v & -v] = (v, tag)
    v, tag = target, 0
    while v:
        low = v & -v
        if low not in pivots:
            return None
        pv, ptag = pivots[low]
        v ^= pv
        tag ^= ptag
    return [i for i in range(len(basis)) if (tag >> i) & 1]


def solve_square(m: BitMatrix, rhs: int) -> int | None:
    """Solve ``m y = rhs``; ``None`` when inconsistent, free variables set to 0."""
    if m.n_rows != m.n_cols:
        raise DimensionError(f"matrix is {m.n_rows}x{m.n_cols}, not square")
    n = m.n_cols
    # augmented rows: column bits 0..n-1, rhs in bit n
    aug = [r | (((rhs >> i) & 1) << n) for i, r in enumerate(m.rows)]
    pivot_rows: list[tuple[int, int]] = []  # (pivot column bit, row)
    used = [False] * len(aug)
    for c in range(n):
        bit = 1 << c
        sel = next((i for i in range(len(aug)) if not used[i] and aug[i] & bit), None)
        if sel is None:
            continue
        used[sel] = True
        prow = aug[sel]
        for i in range(len(aug)):
            if i != sel and aug[i] & bit:
                aug[i] ^= prow
        pivot_rows.append((c, sel))
    full = (1 << n) - 1
    for i, r in enumerate(aug):
        if not used[i] and not (r & full) and (r >> n) & 1:
            return None
    y = 0
    for c, i in pivot_rows:
        if (aug[i] >> n) & 1:
            y |= 1 << c
    return y
