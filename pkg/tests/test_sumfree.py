import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxlin2 import gf2
from maxlin2.errors import PreconditionError
from maxlin2.gf2 import bits
from maxlin2.sumfree import VectorFamily, find_msum_free, verify_msum_free


def brute_sum_free(members, K):
    for size in range(2, len(K) + 1):
        for combo in combinations(K, size):
            acc = 0
            for v in combo:
                acc ^= v
            if acc in members or acc == 0:
                return False
    return True


def random_family(rnd, n, r, extra):
    vecs = [1 << i for i in range(n)]
    rnd.shuffle(vecs)
    for _ in range(extra):
        size = rnd.randint(1, r)
        vecs.append(gf2.from_support(rnd.sample(range(1, n + 1), size)))
    out = list(dict.fromkeys(vecs))
    rnd.shuffle(out)
    return VectorFamily(n, tuple(out), r)


@pytest.mark.parametrize("k", [1, 2, 4, 5])
def test_standard_basis(k):
    M = VectorFamily(5, tuple(1 << i for i in range(5)), 1)
    K = find_msum_free(M, k)
    assert len(K) == k and verify_msum_free(M, K)


def test_small_family():
    M = VectorFamily(3, (bits("100"), bits("010"), bits("001"), bits("110")), 2)
    assert verify_msum_free(M, [bits("100"), bits("001")])
    assert not verify_msum_free(M, [bits("100"), bits("010")])
    good = [K for K in combinations(M.vectors, 2) if brute_sum_free(set(M.vectors), K)]
    K = find_msum_free(M, 2)
    assert tuple(K) in good or tuple(reversed(K)) in good


def test_precondition_rejections():
    M = VectorFamily(3, (bits("100"), bits("010"), bits("001"), bits("110")), 2)
    with pytest.raises(PreconditionError) as info:
        find_msum_free(M, 3)
    assert info.value.condition == "n >= r(k-1)+1"
    with pytest.raises(PreconditionError) as info:
        find_msum_free(VectorFamily(3, (bits("100"), bits("010")), 1), 1)
    assert info.value.condition == "M spans F2^n"
    with pytest.raises(PreconditionError) as info:
        VectorFamily(3, (bits("111"),), 2)
    assert info.value.condition == "at most r nonzeros"


def test_verify_singleton_and_subset_check():
    M = VectorFamily(2, (1, 2, 3), 2)
    assert verify_msum_free(M, [3])
    with pytest.raises(PreconditionError):
        verify_msum_free(M, [4])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_random_families(seed):
    rnd = random.Random(seed)
    r = rnd.randint(1, 4)
    n = rnd.randint(r + 1, 16) if r < 16 else 16
    kmax = min(5, (n - 1) // r + 1)
    k = rnd.randint(1, kmax)
    M = random_family(rnd, n, r, rnd.randint(0, 20))
    K = find_msum_free(M, k)
    assert len(K) == k
    assert set(K) <= set(M.vectors)
    assert verify_msum_free(M, K) and brute_sum_free(set(M.vectors), K)
