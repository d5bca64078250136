"""Pseudo-boolean functions f: {-1,1}^n -> Q in Fourier form.

``f(x) = constant + sum_I coef_I * prod_{i in I} x_i``.  Every such function
is a constant plus the excess of the system ``prod_I x_i = sign(coef_I)``
weighted by ``|coef_I|``, which gives the rank-based lower bound on max f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import gf2
from .errors import DimensionError, ParseError
from .linsystem import (
    Assignment,
    Equation,
    LinearSystem,
    _content_lines,
    _format_rational,
    _parse_indices,
    lift_assignment,
    neg_mask,
    reduce,
)
from .solver import guaranteed_excess_assignment


@dataclass(frozen=True)
class FourierPolynomial:
    n_vars: int
    constant: Fraction
    terms: Mapping[int, Fraction]  # lhs bitset -> nonzero coefficient

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        clean = {}
        limit = 1 << self.n_vars
        for mask, c in self.terms.items():
            if not 0 < mask < limit:
                raise DimensionError(f"term {mask:#x} outside 1..{self.n_vars}")
            c = Fraction(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_terms(
        cls, n_vars: int, terms: Iterable[tuple[Sequence[int], object]], constant=0
    ) -> "FourierPolynomial":
        """Build from ``(indices, coef)`` pairs; repeated index sets are summed."""
        acc: dict[int, Fraction] = {}
        for idx, c in terms:
            mask = gf2.from_support(idx)
            acc[mask] = acc.get(mask, Fraction(0)) + Fraction(c)
        return cls(n_vars, Fraction(constant), acc)

    @property
    def degree(self) -> int:
        return max((gf2.popcount(m) for m in self.terms), default=0)

    def scale(self, lam) -> "FourierPolynomial":
        lam = Fraction(lam)
        return FourierPolynomial(self.n_vars, self.constant * lam, {m: c * lam for m, c in self.terms.items()})


def evaluate(f: FourierPolynomial, x: Sequence[int]) -> Fraction:
    if len(x) != f.n_vars:
        raise DimensionError(f"assignment has {len(x)} entries, f has {f.n_vars} variables")
    neg = neg_mask(x)
    total = f.constant
    for mask, c in f.terms.items():
        total += -c if gf2.parity(mask & neg) else c
    return total


def to_excess_system(f: FourierPolynomial) -> tuple[LinearSystem, Fraction]:
    eqs = tuple(Equation(mask, 1 if c > 0 else -1, abs(c)) for mask, c in f.terms.items())
    return LinearSystem(f.n_vars, eqs), f.constant


@dataclass(frozen=True)
class BoundResult:
    bound: Fraction
    witness: Assignment
    rank_used: int
    k_star: int


def lower_bound(f: FourierPolynomial) -> BoundResult:
    """max f >= constant + floor((rank A + r - 1)/r) * min |coef|, with a witness."""
    system, offset = to_excess_system(f)
    if not f.terms:
        return BoundResult(offset, (1,) * f.n_vars, 0, 0)
    r = f.degree
    reduced, log = reduce(system)
    rank = reduced.n_vars
    k_star = (rank + r - 1) // r
    assert rank >= (k_star - 1) * r + 1 and rank < k_star * r + 1
    x = lift_assignment(log, guaranteed_excess_assignment(reduced, k_star, r))
    bound = offset + k_star * min(abs(c) for c in f.terms.values())
    assert evaluate(f, x) >= bound
    return BoundResult(bound, x, rank, k_star)


# -- .pbf text format ------------------------------------------------------

def _parse_rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", lineno) from None


def parse_pbf(text: str) -> FourierPolynomial:
    header = None
    constant = Fraction(0)
    seen_const = False
    terms: list[tuple[list[int], Fraction]] = []
    for lineno, toks in _content_lines(text):
        if header is None:
            if len(toks) != 4 or toks[:2] != ["p", "pbf"]:
                raise ParseError("expected header 'p pbf <n> <t>'", lineno)
            try:
                header = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        if toks[0] == "const":
            if len(toks) != 2 or seen_const:
                raise ParseError("expected a single 'const <rational>' line", lineno)
            constant = _parse_rational(toks[1], lineno)
            seen_const = True
            continue
        if len(toks) < 2:
            raise ParseError("expected '<coef> <i1> ...'", lineno)
        c = _parse_rational(toks[0], lineno)
        terms.append((_parse_indices(toks[1:], header[0], lineno), c))
    if header is None:
        raise ParseError("missing header 'p pbf <n> <t>'")
    if len(terms) != header[1]:
        raise ParseError(f"header declares {header[1]} terms, found {len(terms)}")
    return FourierPolynomial.from_terms(header[0], terms, constant)


def format_pbf(f: FourierPolynomial, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p pbf {f.n_vars} {len(f.terms)}")
    if f.constant:
        lines.append(f"const {_format_rational(f.constant)}")
    for mask, c in f.terms.items():
        lines.append(f"{_format_rational(c)} {' '.join(map(str, gf2.support(mask)))}")
    return "\n".join(lines) + "\n"
