"""Weighted systems of equations prod_{i in I} x_i = b over {-1, +1}.

Left-hand sides are bitsets (see :mod:`maxlin2.gf2`), right-hand sides are
``+1``/``-1`` and weights are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import gf2
from .errors import DimensionError, ParseError, PreconditionError

Assignment = tuple[int, ...]


@dataclass(frozen=True)
class Equation:
    lhs: int
    rhs: int
    weight: Fraction

    def __post_init__(self):
        if self.lhs <= 0:
            raise PreconditionError("I_j nonempty", "equation has an empty left-hand side")
        if self.rhs not in (1, -1):
            raise ValueError(f"rhs must be +1 or -1, got {self.rhs!r}")
        if not isinstance(self.weight, Fraction):
            object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise PreconditionError("w_j > 0", f"nonpositive weight {self.weight}")

    @property
    def coef(self) -> Fraction:
        """Signed coefficient w_j * b_j of the equation in the excess polynomial."""
        return self.weight * self.rhs

    @property
    def variables(self) -> list[int]:
        return gf2.support(self.lhs)


def eq(variables: Iterable[int], rhs: int = 1, weight=1) -> Equation:
    """Shorthand: ``eq([1, 2], -1, 3)`` is x1*x2 = -1 with weight 3."""
    return Equation(gf2.from_support(variables), rhs, Fraction(weight))


@dataclass(frozen=True)
class LinearSystem:
    n_vars: int
    equations: tuple[Equation, ...] = ()
    var_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        if self.var_names is None:
            object.__setattr__(self, "var_names", tuple(f"x{i}" for i in range(1, self.n_vars + 1)))
        else:
            object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(self.var_names) != self.n_vars:
            raise DimensionError("var_names length differs from n_vars")
        limit = 1 << self.n_vars
        for e in self.equations:
            if e.lhs >= limit:
                raise DimensionError(f"equation {gf2.support(e.lhs)} exceeds {self.n_vars} variables")

    @classmethod
    def of(cls, n_vars: int, *equations: Equation) -> "LinearSystem":
        return cls(n_vars, tuple(equations))

    def __len__(self) -> int:
        return len(self.equations)

    @property
    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.equations), Fraction(0))

    @property
    def min_weight(self) -> Fraction | None:
        return min((e.weight for e in self.equations), default=None)

    @property
    def max_arity(self) -> int:
        return max((gf2.popcount(e.lhs) for e in self.equations), default=0)

    def matrix(self) -> gf2.BitMatrix:
        """The coefficient matrix A: one row per equation."""
        return gf2.BitMatrix(tuple(e.lhs for e in self.equations), self.n_vars)

    def is_integral(self) -> bool:
        return all(e.weight.denominator == 1 for e in self.equations)

    def replace(self, equations: Iterable[Equation]) -> "LinearSystem":
        return LinearSystem(self.n_vars, tuple(equations), self.var_names)


# -- assignments -----------------------------------------------------------

def neg_mask(x: Sequence[int]) -> int:
    """Bitset of the coordinates of ``x`` equal to -1."""
    m = 0
    for i, v in enumerate(x):
        if v == -1:
            m |= 1 << i
        elif v != 1:
            raise ValueError(f"assignment entries must be +1/-1, got {v!r}")
    return m


def from_neg_mask(mask: int, n: int) -> Assignment:
    return tuple(-1 if (mask >> i) & 1 else 1 for i in range(n))


def product(lhs: int, x: Sequence[int]) -> int:
    return -1 if gf2.parity(lhs & neg_mask(x)) else 1


def excess(s: LinearSystem, x: Sequence[int]) -> Fraction:
    """Weight of satisfied minus weight of falsified equations under ``x``."""
    if len(x) != s.n_vars:
        raise DimensionError(f"assignment has {len(x)} entries, system has {s.n_vars} variables")
    neg = neg_mask(x)
    total = Fraction(0)
    for e in s.equations:
        if gf2.parity(e.lhs & neg):
            total -= e.coef
        else:
            total += e.coef
    return total


# -- transform log ---------------------------------------------------------

@dataclass(frozen=True)
class Rule1Merge:
    lhs: int
    signs: tuple[int, ...]
    weights: tuple[Fraction, ...]


@dataclass(frozen=True)
class Rule2Delete:
    deleted: tuple[int, ...]  # 1-based, in the numbering before the step
    kept: tuple[int, ...]
    n_before: int


@dataclass(frozen=True)
class HStep:
    lhs: int
    rhs: int
    var: int


Record = Union[Rule1Merge, Rule2Delete, HStep]


@dataclass
class TransformLog:
    """Forward-ordered record of reduction and marking steps."""

    records: list[Record] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def extend(self, other: "TransformLog | Iterable[Record]") -> "TransformLog":
        self.records.extend(other)
        return self

    def __add__(self, other: "TransformLog") -> "TransformLog":
        return TransformLog(self.records + list(other.records))

    def count(self, kind: type) -> int:
        return sum(isinstance(r, kind) for r in self.records)


def lift_assignment(log: TransformLog, x: Sequence[int]) -> Assignment:
    """Map an assignment of the final system back to the variables of the first.

    Deleted variables are set to +1, which keeps every product unchanged.
    Marked variables are back-substituted so their marked equation holds.
    """
    cur = list(x)
    for rec in reversed(log.records):
        if isinstance(rec, Rule2Delete):
            if len(cur) != len(rec.kept):
                raise DimensionError(
                    f"assignment has {len(cur)} entries, log expects {len(rec.kept)}"
                )
            full = [1] * rec.n_before
            for val, idx in zip(cur, rec.kept):
                full[idx - 1] = val
            cur = full
        elif isinstance(rec, HStep):
            if rec.lhs >> len(cur):
                raise DimensionError("assignment too short for marked equation")
            rest = rec.lhs & ~(1 << (rec.var - 1))
            cur[rec.var - 1] = rec.rhs * product(rest, cur)
    return tuple(cur)


# -- reduction rules -------------------------------------------------------

def _merge(equations: Iterable[Equation], log: list[Record]) -> list[Equation]:
    """Rule 1 saturation; output keeps the first-occurrence order of each lhs."""
    acc: dict[int, Fraction] = {}
    seen: dict[int, list[Equation]] = {}
    for e in equations:
        acc[e.lhs] = acc.get(e.lhs, Fraction(0)) + e.coef
        seen.setdefault(e.lhs, []).append(e)
    out = []
    for lhs, c in acc.items():
        group = seen[lhs]
        if len(group) > 1:
            log.append(Rule1Merge(lhs, tuple(e.rhs for e in group), tuple(e.weight for e in group)))
        if c:
            out.append(Equation(lhs, 1 if c > 0 else -1, abs(c)))
    return out


def apply_rule1(s: LinearSystem) -> tuple[LinearSystem, TransformLog]:
    log: list[Record] = []
    out = _merge(s.equations, log)
    return s.replace(out), TransformLog(log)


def apply_rule2(s: LinearSystem) -> tuple[LinearSystem, TransformLog]:
    keep = gf2.independent_columns(s.matrix())
    if len(keep) == s.n_vars:
        return s, TransformLog()
    deleted = tuple(i for i in range(1, s.n_vars + 1) if i not in set(keep))
    new_eqs = []
    for e in s.equations:
        lhs = 0
        for new_i, old_i in enumerate(keep):
            if (e.lhs >> (old_i - 1)) & 1:
                lhs |= 1 << new_i
        # a nonzero row cannot vanish on a column basis
        assert lhs, "row vanished on column basis"
        new_eqs.append(Equation(lhs, e.rhs, e.weight))
    names = tuple(s.var_names[i - 1] for i in keep)
    out = LinearSystem(len(keep), tuple(new_eqs), names)
    return out, TransformLog([Rule2Delete(deleted, tuple(keep), s.n_vars)])


def has_distinct_lhs(s: LinearSystem) -> bool:
    return len({e.lhs for e in s.equations}) == len(s.equations)


def is_irreducible(s: LinearSystem) -> bool:
    return has_distinct_lhs(s) and gf2.rank(s.matrix()) == s.n_vars


def reduce(s: LinearSystem) -> tuple[LinearSystem, TransformLog]:
    """Apply Rule 1 to saturation, then Rule 2, until nothing changes."""
    log = TransformLog()
    while True:
        s, l1 = apply_rule1(s)
        s, l2 = apply_rule2(s)
        log.extend(l1).extend(l2)
        if is_irreducible(s):
            return s, log


# -- .lin2 text format -----------------------------------------------------

def _parse_weight(tok: str, lineno: int) -> Fraction:
    try:
        if "/" in tok:
            p, q = tok.split("/")
            w = Fraction(int(p), int(q))
        else:
            w = Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {tok!r}", lineno) from None
    if w <= 0:
        raise ParseError(f"weight must be positive, got {tok}", lineno)
    return w


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_indices(toks: Sequence[str], n: int, lineno: int) -> list[int]:
    try:
        idx = [int(t) for t in toks]
    except ValueError:
        raise ParseError(f"bad variable index in {' '.join(toks)!r}", lineno) from None
    if not idx:
        raise ParseError("empty variable set", lineno)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError("indices must be strictly increasing", lineno)
    if idx[0] < 1 or idx[-1] > n:
        raise ParseError(f"index out of range 1..{n}", lineno)
    return idx


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield lineno, line.split()


def parse_lin2(text: str) -> LinearSystem:
    header = None
    equations = []
    for lineno, toks in _content_lines(text):
        if header is None:
            if len(toks) != 4 or toks[:2] != ["p", "lin2"]:
                raise ParseError("expected header 'p lin2 <n> <m>'", lineno)
            try:
                header = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("header counts must be nonnegative", lineno)
            continue
        if len(toks) < 3:
            raise ParseError("expected '<weight> <rhs> <i1> ...'", lineno)
        w = _parse_weight(toks[0], lineno)
        if toks[1] not in ("+1", "1", "-1"):
            raise ParseError(f"rhs must be +1 or -1, got {toks[1]!r}", lineno)
        idx = _parse_indices(toks[2:], header[0], lineno)
        equations.append(Equation(gf2.from_support(idx), int(toks[1]), w))
    if header is None:
        raise ParseError("missing header 'p lin2 <n> <m>'")
    if len(equations) != header[1]:
        raise ParseError(f"header declares {header[1]} equations, found {len(equations)}")
    return LinearSystem(header[0], tuple(equations))


def format_lin2(s: LinearSystem, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p lin2 {s.n_vars} {len(s.equations)}")
    for e in s.equations:
        idx = " ".join(map(str, gf2.support(e.lhs)))
        lines.append(f"{_format_rational(e.weight)} {'+1' if e.rhs > 0 else '-1'} {idx}")
    return "\n".join(lines) + "\n"
