"""Brute-force oracles and instance generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm

import numpy as np

from . import gf2
from .errors import PreconditionError
from .graphapps import EQ, NEQ, LabeledGraph
from .linsystem import Assignment, Equation, LinearSystem, eq
from .pseudobool import FourierPolynomial, to_excess_system

MAX_ORACLE_VARS = 24


def excess_table(s: LinearSystem) -> tuple[np.ndarray, int]:
    """Scaled excess of every assignment, indexed in lexicographic order.

    Index t encodes x_1 in its most significant bit (bit set means -1), so
    ascending t is lexicographic order with +1 < -1.  Values are integers
    equal to excess * scale.
    """
    n = s.n_vars
    if n > MAX_ORACLE_VARS:
        raise PreconditionError(f"n <= {MAX_ORACLE_VARS}", f"oracle refuses n={n} variables")
    scale = lcm(*(e.weight.denominator for e in s.equations)) if s.equations else 1
    t = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n, dtype=np.int64)
    for e in s.equations:
        rev = 0
        for i in gf2.support(e.lhs):
            rev |= 1 << (n - i)
        c = int(e.coef * scale)
        odd = np.bitwise_count(t & rev) & 1
        table += c * (1 - 2 * odd.astype(np.int64))
    return table, scale


def _decode(t: int, n: int) -> Assignment:
    return tuple(-1 if (t >> (n - i)) & 1 else 1 for i in range(1, n + 1))


def brute_force_max_excess(s: LinearSystem) -> tuple[Fraction, Assignment]:
    """Exact maximum excess with the lexicographically smallest maximizer."""
    table, scale = excess_table(s)
    t = int(np.argmax(table))
    return Fraction(int(table[t]), scale), _decode(t, s.n_vars)


def brute_force_max(f: FourierPolynomial) -> tuple[Fraction, Assignment]:
    system, offset = to_excess_system(f)
    value, x = brute_force_max_excess(system)
    return offset + value, x


def brute_force_max_cut(g) -> int:
    """Maximum number of satisfied edges of a labeled graph over all colorings."""
    terms = [((u, v), Fraction(-1 if lab == NEQ else 1, 2)) for u, v, lab in g.edges]
    f = FourierPolynomial.from_terms(g.n_vertices, terms, Fraction(g.m, 2))
    value, _ = brute_force_max(f)
    assert value.denominator == 1
    return int(value)


def tight_instance(kappa: int, r: int) -> LinearSystem:
    """Blocks of r variables, each carrying prod_I x_i = -1 for every nonempty I.

    Has n = r(kappa-1) variables and maximum excess exactly kappa-1.
    """
    if kappa < 2 or r < 1:
        raise PreconditionError("kappa >= 2, r >= 1", f"invalid parameters kappa={kappa}, r={r}")
    eqs = []
    for block in range(kappa - 1):
        base = block * r
        for size in range(1, r + 1):
            for sub in combinations(range(base + 1, base + r + 1), size):
                eqs.append(eq(sub, -1, 1))
    return LinearSystem(r * (kappa - 1), tuple(eqs))


@dataclass(frozen=True)
class RandomSpec:
    n: int
    m: int
    r: int
    max_weight: int = 1
    seed: int = 0


@dataclass(frozen=True)
class TightSpec:
    kappa: int
    r: int


GeneratorSpec = RandomSpec | TightSpec


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based stream: the same (seed, index) always yields the same draws."""
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), index]))


def _random_lhs(rng: np.random.Generator, n: int, r: int) -> int:
    size = int(rng.integers(1, r + 1))
    picks = rng.choice(n, size=size, replace=False)
    return gf2.from_support(int(i) + 1 for i in picks)


def random_instance(spec: GeneratorSpec) -> LinearSystem:
    if isinstance(spec, TightSpec):
        return tight_instance(spec.kappa, spec.r)
    n, m, r = spec.n, spec.m, spec.r
    if not 1 <= r <= n:
        raise PreconditionError("1 <= r <= n", f"need 1 <= r <= n, got r={r}, n={n}")
    if spec.max_weight < 1:
        raise PreconditionError("max_weight >= 1", "max_weight must be positive")
    available = sum(comb(n, j) for j in range(1, r + 1))
    if m > available:
        raise PreconditionError(
            "m <= #distinct lhs", f"m={m} exceeds the {available} distinct lhs with at most {r} variables"
        )
    rng = rng_for(spec.seed)
    if m * 2 > available:
        pool = [gf2.from_support(c) for j in range(1, r + 1) for c in combinations(range(1, n + 1), j)]
        chosen = [pool[int(i)] for i in rng.permutation(len(pool))[:m]]
    else:
        seen: set[int] = set()
        chosen = []
        while len(chosen) < m:
            v = _random_lhs(rng, n, r)
            if v not in seen:
                seen.add(v)
                chosen.append(v)
    signs = rng.integers(0, 2, size=m)
    weights = rng.integers(1, spec.max_weight + 1, size=m)
    eqs = tuple(
        Equation(lhs, 1 if s else -1, Fraction(int(w))) for lhs, s, w in zip(chosen, signs, weights)
    )
    return LinearSystem(n, eqs)


def random_polynomial(n: int, t: int, degree: int, seed: int, max_coef: int = 5) -> FourierPolynomial:
    """Random polynomial with ``t`` distinct terms and rational coefficients."""
    rng = rng_for(seed, 1)
    sys_ = random_instance(RandomSpec(n, t, degree, max_coef, seed))
    dens = rng.integers(1, 4, size=len(sys_))
    terms = {e.lhs: e.coef / int(d) for e, d in zip(sys_.equations, dens)}
    const = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
    return FourierPolynomial(n, const, terms)


def random_graph(n: int, p: float, seed: int, labeled: bool = True):
    """Simple random graph G(n, p); labels uniform over '=' and '!=' when ``labeled``."""
    rng = rng_for(seed, 2)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                lab = (EQ if rng.random() < 0.5 else NEQ) if labeled else NEQ
                edges.append((u, v, lab))
    return LabeledGraph(n, tuple(edges))
