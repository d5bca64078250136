import sys
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import strategies as st

from maxlin2.linsystem import Equation, LinearSystem, excess
from maxlin2.testkit import RandomSpec, random_instance


def enum_max_excess(s: LinearSystem) -> Fraction:
    """Plain itertools enumeration; independent of the numpy oracle."""
    return max(excess(s, x) for x in product((1, -1), repeat=s.n_vars))


@st.composite
def systems(draw, max_n=6, max_m=10, max_w=5, rational=False):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    eqs = []
    for _ in range(m):
        lhs = draw(st.integers(1, (1 << n) - 1))
        rhs = draw(st.sampled_from((1, -1)))
        if rational:
            w = Fraction(draw(st.integers(1, max_w)), draw(st.integers(1, 4)))
        else:
            w = Fraction(draw(st.integers(1, max_w)))
        eqs.append(Equation(lhs, rhs, w))
    return LinearSystem(n, tuple(eqs))


def corpus(count, max_n=14, max_m=40, max_w=8, seed0=0, max_r=4):
    """Seeded random instances with distinct left-hand sides."""
    import random

    out = []
    for seed in range(seed0, seed0 + count):
        rnd = random.Random(seed)
        n = rnd.randint(1, max_n)
        r = rnd.randint(1, min(n, max_r))
        avail = sum(comb(n, j) for j in range(1, r + 1))
        m = rnd.randint(0, min(max_m, avail))
        out.append(random_instance(RandomSpec(n, m, r, max_w, seed)))
    return out


@pytest.fixture
def triangle_system():
    from maxlin2.linsystem import eq

    return LinearSystem.of(3, eq([1, 2]), eq([2, 3]), eq([1]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
