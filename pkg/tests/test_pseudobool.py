from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxlin2 import gf2
from maxlin2.errors import ParseError
from maxlin2.linsystem import eq, excess
from maxlin2.pseudobool import (
    FourierPolynomial,
    evaluate,
    format_pbf,
    lower_bound,
    parse_pbf,
    to_excess_system,
)
from maxlin2.testkit import random_polynomial

F = FourierPolynomial.from_terms(3, [((1, 2), 2), ((2, 3), -1)], 1)


def brute_max(f):
    return max(evaluate(f, x) for x in product((1, -1), repeat=f.n_vars))


def test_evaluate():
    assert evaluate(F, (1, 1, -1)) == 4
    assert evaluate(FourierPolynomial(2, Fraction(7, 3), {}), (1, -1)) == Fraction(7, 3)
    assert evaluate(FourierPolynomial.from_terms(1, [((1,), 3)]), (-1,)) == -3


def test_to_excess_system():
    s, off = to_excess_system(F)
    assert off == 1
    assert s.equations == (eq([1, 2], 1, 2), eq([2, 3], -1, 1))
    s, off = to_excess_system(FourierPolynomial(2, Fraction(5), {}))
    assert off == 5 and len(s) == 0
    s, off = to_excess_system(FourierPolynomial.from_terms(1, [((1,), -1)]))
    assert s.equations == (eq([1], -1, 1),) and off == 0


def test_lower_bound_worked_example():
    res = lower_bound(F)
    assert res.rank_used == 2 and res.k_star == 1
    assert res.bound == 2
    assert evaluate(F, res.witness) >= 2
    assert brute_max(F) == 4


def test_lower_bound_linear_and_constant():
    f = FourierPolynomial.from_terms(1, [((1,), 3)])
    res = lower_bound(f)
    assert res.bound == 3 == brute_max(f)
    c = FourierPolynomial(2, Fraction(-4), {})
    res = lower_bound(c)
    assert res.bound == -4 and res.k_star == 0


def test_duplicate_terms_merge():
    f = FourierPolynomial.from_terms(2, [((1, 2), 1), ((1, 2), -1), ((1,), 2), ((1,), 1)])
    assert f.terms == {gf2.from_support([1]): 3}


def _poly(n, t, d, seed):
    d = min(d, n)
    return random_polynomial(n, min(t, sum(comb(n, j) for j in range(1, d + 1))), d, seed)


polys = st.builds(
    _poly,
    st.integers(1, 8),
    st.integers(1, 12),
    st.integers(1, 4),
    st.integers(0, 2**32),
)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_bridge_exactness(f):
    s, off = to_excess_system(f)
    for x in product((1, -1), repeat=f.n_vars):
        assert evaluate(f, x) == off + excess(s, x)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_bound_sound(f):
    res = lower_bound(f)
    assert evaluate(f, res.witness) >= res.bound
    assert res.bound <= brute_max(f)
    r = f.degree
    assert res.k_star == max(k for k in range(0, res.rank_used + 2) if res.rank_used >= (k - 1) * r + 1)


@settings(max_examples=50, deadline=None)
@given(polys, st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_scaling(f, lam):
    a, b = lower_bound(f), lower_bound(f.scale(lam))
    assert b.bound == a.bound * lam
    assert evaluate(f.scale(lam), b.witness) >= b.bound


@settings(max_examples=50, deadline=None)
@given(polys, st.randoms(use_true_random=False))
def test_term_order_irrelevant(f, rnd):
    items = list(f.terms.items())
    rnd.shuffle(items)
    g = FourierPolynomial.from_terms(f.n_vars, [(gf2.support(m), c) for m, c in items], f.constant)
    assert lower_bound(g).bound == lower_bound(f).bound
    assert gf2.rank([m for m, _ in items]) == lower_bound(f).rank_used


def test_pbf_roundtrip():
    text = "c demo\np pbf 3 2\nconst 1\n2 1 2\n-1 2 3\n"
    f = parse_pbf(text)
    assert f == F
    assert parse_pbf(format_pbf(f)) == f


@pytest.mark.parametrize(
    "text",
    ["p pbf 2 1\n1 3\n", "p pbf 2 1\nconst x\n1 1\n", "p pbf 2 2\n1 1\n", "p pbf 2 1\n1 2 1\n", "1 1\n"],
)
def test_pbf_errors(text):
    with pytest.raises(ParseError):
        parse_pbf(text)
