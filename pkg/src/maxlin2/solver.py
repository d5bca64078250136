"""Decision procedures and kernels for MaxLin2-AA and Max-r-Lin2-AA.

An instance (S, k) is a Yes-instance iff some assignment has excess >= 2k.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import gf2
from .algoh import complete_assignment, conditional_expectation_assignment, h_step, run_h
from .errors import PreconditionError
from .linsystem import (
    Assignment,
    LinearSystem,
    TransformLog,
    excess,
    from_neg_mask,
    is_irreducible,
    lift_assignment,
    reduce,
)
from .sumfree import VectorFamily, find_msum_free


class Regime(str, enum.Enum):
    FEW_EQUATIONS = "m<2k"
    MANY_EQUATIONS_YES = "2k<=m<=2^(n/(2k-1))-2"
    HUGE_M = "m>=n^(2k)"
    KERNEL = "kernel"
    TRIVIAL = "k=0"
    LARGE_N_YES = "n>=(2k-1)r+1"
    SMALL_N = "n<=(2k-1)r"


@dataclass
class Stats:
    nodes: int = 0
    reductions: int = 0
    regime: str = ""
    vars_before: int = 0
    vars_after: int = 0
    notes: list[str] = field(default_factory=list)


@dataclass
class Verdict:
    answer: bool
    witness: Assignment | None = None
    achieved_excess: Fraction | None = None
    stats: Stats = field(default_factory=Stats)

    def __bool__(self) -> bool:
        return self.answer


@dataclass
class Solved:
    verdict: Verdict


@dataclass
class Kernel:
    system: LinearSystem
    log: TransformLog
    k: int
    regime: Regime = Regime.KERNEL


KernelOutcome = Union[Solved, Kernel]


def _yes(original: LinearSystem, witness: Assignment, k: int, stats: Stats) -> Verdict:
    value = excess(original, witness)
    assert value >= 2 * k, f"witness excess {value} below 2k={2 * k}"
    return Verdict(True, witness, value, stats)


# -- search tree -----------------------------------------------------------

def _falsify_all(s: LinearSystem, rows: list[int]) -> Assignment:
    """Unique assignment falsifying the given equations (independent rows, n of them)."""
    eqs = [s.equations[i] for i in rows]
    m = gf2.BitMatrix(tuple(e.lhs for e in eqs), s.n_vars)
    # product -b means parity 1 when b = +1 and parity 0 when b = -1
    rhs = 0
    for i, e in enumerate(eqs):
        if e.rhs == 1:
            rhs |= 1 << i
    y = gf2.solve_square(m, rhs)
    assert y is not None
    return from_neg_mask(y, s.n_vars)


def _search(s: LinearSystem, log: TransformLog, marked: Fraction, target: Fraction, stats: Stats):
    """Depth-first node procedure; returns a lifted witness or None."""
    stats.nodes += 1
    s, red = reduce(s)
    stats.reductions += len(red)
    log = log + red
    if marked >= target:
        return lift_assignment(log, conditional_expectation_assignment(s))
    if marked + s.total_weight < target:
        return None
    rows = gf2.independent_rows([e.lhs for e in s.equations])
    x = _falsify_all(s, rows)
    if excess(s, x) >= target - marked:
        return lift_assignment(log, x)
    for i in rows:
        res = _branch(s, log, marked, target, stats, i)
        if res is not None:
            return res
    return None


def _branch(s, log, marked, target, stats, i):
    child, rec = h_step(s, i)
    return _search(child, log + TransformLog([rec.as_step()]), marked + rec.weight, target, stats)


def solve_search_tree(s: LinearSystem, k: int, *, parallel: bool = False) -> Verdict:
    """Exact decision of max excess >= 2k by the bounded search tree.

    With ``parallel=True`` the root's branches run in a thread pool; the
    lowest-index successful branch is reported, matching the sequential run.
    """
    stats = Stats(vars_before=s.n_vars, regime="search")
    if k < 0:
        raise PreconditionError("k >= 0", f"k must be nonnegative, got {k}")
    if k == 0:
        return _yes(s, conditional_expectation_assignment(s), 0, stats)
    target = Fraction(2 * k)
    if not parallel:
        w = _search(s, TransformLog(), Fraction(0), target, stats)
    else:
        w = _search_parallel(s, target, stats)
    if w is None:
        return Verdict(False, stats=stats)
    return _yes(s, w, k, stats)


def _search_parallel(s: LinearSystem, target: Fraction, stats: Stats):
    stats.nodes += 1
    r, log = reduce(s)
    stats.reductions += len(log)
    if r.total_weight < target:
        return None
    rows = gf2.independent_rows([e.lhs for e in r.equations])
    x = _falsify_all(r, rows)
    if excess(r, x) >= target:
        return lift_assignment(log, x)
    zero = Fraction(0)
    branch_stats = [Stats() for _ in rows]
    with ThreadPoolExecutor() as pool:
        futures = [pool.submit(_branch, r, log, zero, target, st, i) for st, i in zip(branch_stats, rows)]
        results = [f.result() for f in futures]
    for st in branch_stats:
        stats.nodes += st.nodes
        stats.reductions += st.reductions
    return next((w for w in results if w is not None), None)


# -- kernel for MaxLin2-AA[k] ---------------------------------------------

def classify_regime(n: int, m: int, k: int) -> Regime:
    """Case split for an irreducible system with n variables and m equations.

    Integer-only: m <= 2^(n/(2k-1)) - 2 is tested as (m+2)^(2k-1) <= 2^n.
    """
    if k == 0:
        return Regime.TRIVIAL
    if m < 2 * k:
        return Regime.FEW_EQUATIONS
    if (m + 2) ** (2 * k - 1) <= 2 ** n:
        return Regime.MANY_EQUATIONS_YES
    if m >= n ** (2 * k):
        return Regime.HUGE_M
    return Regime.KERNEL


def kernel_variable_bound_holds(n: int, k: int) -> bool:
    """n <= 4k^2 log2(16k^4), evaluated as 2^n <= (16k^4)^(4k^2)."""
    return 2 ** n <= (16 * k ** 4) ** (4 * k * k)


def _require_integral(s: LinearSystem) -> None:
    if not s.is_integral():
        raise PreconditionError("integral weights", "this operation needs integer weights")


def kernelize(s: LinearSystem, k: int) -> KernelOutcome:
    _require_integral(s)
    r, log = reduce(s)
    stats = Stats(reductions=len(log), vars_before=s.n_vars, vars_after=r.n_vars)
    regime = classify_regime(r.n_vars, len(r), k)
    stats.regime = regime.value
    if regime is Regime.TRIVIAL:
        return Solved(_yes(s, conditional_expectation_assignment(s), 0, stats))
    if regime in (Regime.FEW_EQUATIONS, Regime.KERNEL):
        if regime is Regime.KERNEL:
            assert kernel_variable_bound_holds(r.n_vars, k)
        return Kernel(r, log, k, regime)
    v = solve_search_tree(r, k)
    stats.nodes = v.stats.nodes
    stats.reductions += v.stats.reductions
    if regime is Regime.MANY_EQUATIONS_YES:
        stats.notes.append("decision from the many-equations bound; witness found by search tree")
        assert v.answer, "many-equations regime must be a Yes-instance"
    if not v.answer:
        return Solved(Verdict(False, stats=stats))
    return Solved(_yes(s, lift_assignment(log, v.witness), k, stats))


def solve(s: LinearSystem, k: int, *, parallel: bool = False) -> Verdict:
    """Kernelize, then run the search tree on the kernel."""
    out = kernelize(s, k)
    if isinstance(out, Solved):
        return out.verdict
    v = solve_search_tree(out.system, out.k, parallel=parallel)
    stats = Stats(
        nodes=v.stats.nodes,
        reductions=len(out.log) + v.stats.reductions,
        regime=out.regime.value,
        vars_before=s.n_vars,
        vars_after=out.system.n_vars,
    )
    if not v.answer:
        return Verdict(False, stats=stats)
    return _yes(s, lift_assignment(out.log, v.witness), k, stats)


# -- Max-r-Lin2-AA ---------------------------------------------------------

def guaranteed_excess_assignment(s: LinearSystem, k: int, r: int | None = None) -> Assignment:
    """Assignment of an irreducible system with excess >= k * w_min.

    Needs every equation to have at most ``r`` variables and n >= (k-1)r+1.
    """
    if k < 1:
        raise PreconditionError("k >= 1", f"k must be positive, got {k}")
    if not is_irreducible(s):
        raise PreconditionError("irreducible", "system is not irreducible; reduce it first")
    arity = s.max_arity
    if r is None:
        r = arity
    elif r < arity:
        raise PreconditionError("|I_j| <= r", f"an equation has {arity} variables > r={r}")
    if s.n_vars < (k - 1) * r + 1:
        raise PreconditionError("n >= (k-1)r+1", f"n < (k-1)r+1: n={s.n_vars}, k={k}, r={r}")
    M = VectorFamily(s.n_vars, tuple(e.lhs for e in s.equations), r)
    K = find_msum_free(M, k)
    position = {e.lhs: i for i, e in enumerate(s.equations)}
    run = run_h(s, [position[v] for v in K])
    x = complete_assignment(run)
    assert excess(s, x) >= k * s.min_weight
    return x


def kernelize_r(s: LinearSystem, k: int, r: int) -> KernelOutcome:
    """Kernel with at most (2k-1)r variables, or a Yes verdict."""
    if s.max_arity > r:
        raise PreconditionError("|I_j| <= r", f"an equation has {s.max_arity} variables > r={r}")
    _require_integral(s)
    red, log = reduce(s)
    stats = Stats(reductions=len(log), vars_before=s.n_vars, vars_after=red.n_vars)
    if k == 0:
        stats.regime = Regime.TRIVIAL.value
        return Solved(_yes(s, conditional_expectation_assignment(s), 0, stats))
    if red.n_vars >= (2 * k - 1) * r + 1:
        stats.regime = Regime.LARGE_N_YES.value
        x = guaranteed_excess_assignment(red, 2 * k, r)
        return Solved(_yes(s, lift_assignment(log, x), k, stats))
    return Kernel(red, log, k, Regime.SMALL_N)
