from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus, enum_max_excess, systems
from maxlin2.errors import PreconditionError
from maxlin2.linsystem import LinearSystem, eq, excess, is_irreducible, reduce
from maxlin2.solver import (
    Kernel,
    Regime,
    Solved,
    classify_regime,
    guaranteed_excess_assignment,
    kernel_variable_bound_holds,
    kernelize,
    kernelize_r,
    solve,
    solve_search_tree,
)
from maxlin2.testkit import tight_instance


def test_search_tree_examples(triangle_system):
    v = solve_search_tree(triangle_system, 1)
    assert v.answer and excess(triangle_system, v.witness) >= 2
    assert not solve_search_tree(LinearSystem.of(1, eq([1], 1), eq([1], -1)), 1).answer
    t = tight_instance(3, 2)
    assert solve_search_tree(t, 1).answer
    assert not solve_search_tree(t, 2).answer


def test_search_tree_k0_uses_expectation():
    s = LinearSystem.of(1, eq([1], 1), eq([1], -1))
    v = solve_search_tree(s, 0)
    assert v.answer and v.achieved_excess == 0


def test_kernelize_many_equations_regime():
    s = LinearSystem.of(3, eq([1]), eq([2]), eq([3]), eq([1, 2, 3]))
    out = kernelize(s, 1)
    assert isinstance(out, Solved)
    assert out.verdict.stats.regime == Regime.MANY_EQUATIONS_YES.value
    assert out.verdict.answer and out.verdict.achieved_excess >= 2
    assert excess(s, (1, 1, 1)) == 4


def test_kernelize_few_equations():
    out = kernelize(LinearSystem.of(1, eq([1])), 1)
    assert isinstance(out, Kernel)
    assert out.system.n_vars == 1 and out.regime is Regime.FEW_EQUATIONS


def test_kernelize_rejects_rational():
    with pytest.raises(PreconditionError):
        kernelize(LinearSystem.of(1, eq([1], 1, Fraction(1, 2))), 1)


def test_classify_threshold_arithmetic():
    assert classify_regime(2, 16, 1) is Regime.HUGE_M
    assert classify_regime(3, 6, 1) is Regime.MANY_EQUATIONS_YES
    assert classify_regime(3, 7, 1) is Regime.KERNEL


def test_solve_trivial_cases():
    assert solve(LinearSystem.of(2, eq([1], 1), eq([1], -1)), 0).answer
    assert not solve(LinearSystem(3), 1).answer
    assert not solve(LinearSystem(0), 2).answer


def test_guaranteed_excess_examples(triangle_system):
    x = guaranteed_excess_assignment(triangle_system, 2)
    assert excess(triangle_system, x) >= 2
    s = LinearSystem.of(3, eq([1, 2], 1, 2), eq([2, 3], -1, 3), eq([1], 1, 5))
    assert is_irreducible(s)
    x = guaranteed_excess_assignment(s, 2)
    assert excess(s, x) >= 4
    assert enum_max_excess(s) == 10
    for k in (1,):
        assert excess(s, guaranteed_excess_assignment(s, k)) >= 2


def test_guaranteed_excess_preconditions():
    t = tight_instance(3, 2)
    with pytest.raises(PreconditionError) as info:
        guaranteed_excess_assignment(t, 3)
    assert info.value.condition == "n >= (k-1)r+1"
    with pytest.raises(PreconditionError):
        guaranteed_excess_assignment(LinearSystem.of(2, eq([1, 2])), 1)
    with pytest.raises(PreconditionError):
        guaranteed_excess_assignment(t, 1, r=1)


def test_guaranteed_excess_real_weights():
    s = LinearSystem.of(3, eq([1, 2], 1, Fraction(1, 3)), eq([2, 3], -1, Fraction(5, 2)), eq([1], 1, 2))
    x = guaranteed_excess_assignment(s, 2)
    assert excess(s, x) >= Fraction(2, 3)


def test_kernelize_r_examples(triangle_system):
    out = kernelize_r(triangle_system, 1, 2)
    assert isinstance(out, Solved) and out.verdict.answer
    five = LinearSystem.of(5, *(eq([i]) for i in range(1, 6)))
    out = kernelize_r(five, 2, 2)
    assert isinstance(out, Kernel) and out.system.n_vars == 5
    for k in (1, 2, 3):
        assert isinstance(kernelize_r(tight_instance(2, 2), k, 2), Kernel)
    with pytest.raises(PreconditionError):
        kernelize_r(triangle_system, 1, 1)


def test_tight_instance_sharpness():
    for kappa, r in [(2, 1), (2, 2), (3, 2), (3, 3), (4, 2)]:
        t = tight_instance(kappa, r)
        assert t.n_vars == r * (kappa - 1)
        assert enum_max_excess(t) == kappa - 1
        # one more variable than the bound allows would be needed for kappa
        x = guaranteed_excess_assignment(t, kappa - 1)
        assert excess(t, x) >= kappa - 1


@settings(max_examples=150, deadline=None)
@given(systems(max_n=6, max_m=10, rational=True), st.integers(0, 4))
def test_search_tree_matches_oracle(s, k):
    best = enum_max_excess(s) if s.n_vars else 0
    v = solve_search_tree(s, k)
    assert v.answer == (best >= 2 * k)
    if v.answer:
        assert excess(s, v.witness) >= 2 * k


@settings(max_examples=150, deadline=None)
@given(systems(max_n=6, max_m=10), st.integers(0, 4))
def test_solve_matches_oracle(s, k):
    v = solve(s, k)
    assert v.answer == (enum_max_excess(s) >= 2 * k)
    if v.answer:
        assert v.achieved_excess == excess(s, v.witness) >= 2 * k


@pytest.mark.parametrize("s", corpus(40, max_n=9, max_m=20, max_w=1, seed0=1000))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_search_node_bound_unit_weights(s, k):
    r, _ = reduce(s)
    v = solve_search_tree(r, k)
    if r.n_vars >= 2:
        assert v.stats.nodes < r.n_vars ** (2 * k + 1)


@pytest.mark.parametrize("s", corpus(30, max_n=10, max_m=25, max_w=3, seed0=2000))
def test_parallel_matches_sequential(s):
    for k in (1, 2, 3):
        a = solve_search_tree(s, k)
        b = solve_search_tree(s, k, parallel=True)
        assert a.answer == b.answer and a.witness == b.witness


def test_kernel_bound_helper():
    assert kernel_variable_bound_holds(16, 1)
    assert not kernel_variable_bound_holds(17, 1)
