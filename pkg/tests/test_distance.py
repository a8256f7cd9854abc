import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constaq import catalog
from constaq.codes import distance_result, dual_code, min_distance_bruteforce
from constaq.distance import (
    iter_codewords,
    krawtchouk,
    low_weight_search,
    macwilliams,
    minimum_distance,
    parity_from_generator,
    weight_distribution,
)
from constaq.errors import BudgetExceeded
from constaq.field import build_field
from constaq.linalg import matmul_t, nullspace, rank, rref


def naive_min_distance(F, G, s):
    alphabet = F.subfield_codes(s)
    n = len(G[0])
    best = n + 1
    for coeffs in itertools.product(alphabet, repeat=len(G)):
        if not any(coeffs):
            continue
        word = [0] * n
        for c, row in zip(coeffs, G):
            word = [F.add(x, F.mul(c, y)) for x, y in zip(word, row)]
        best = min(best, sum(1 for x in word if x))
    return best


def random_matrix(F, rng, k, n, s):
    alphabet = F.subfield_codes(s)
    return [[int(rng.choice(alphabet)) for _ in range(n)] for _ in range(k)]


@pytest.mark.parametrize("p,kp,s", [(2, 1, 1), (3, 1, 1), (2, 2, 2), (3, 2, 1), (5, 1, 1)])
def test_minimum_distance_matches_naive(p, kp, s):
    F = build_field(p, kp, "auto", s)
    rng = np.random.default_rng(p * 10 + kp)
    for _ in range(10):
        k, n = int(rng.integers(1, 4)), int(rng.integers(4, 8))
        G = random_matrix(F, rng, k, n, s)
        if rank(F, G) == 0:
            continue
        G = rref(F, G)[0]
        res = minimum_distance(F, G, n, s)
        assert res.value == naive_min_distance(F, G, s)


def test_macwilliams_round_trip():
    F = build_field(3, 1)
    rng = np.random.default_rng(0)
    for _ in range(5):
        G = rref(F, random_matrix(F, rng, 3, 7, 1))[0]
        H = nullspace(F, G, 7)
        A = weight_distribution(F, G, 1)
        B = weight_distribution(F, H, 1)
        assert macwilliams(B, 7, 3) == A
        assert sum(A) == 3 ** len(G)


def test_krawtchouk_orthogonality():
    n, q = 5, 3
    for i, j in itertools.product(range(n + 1), repeat=2):
        total = sum(krawtchouk(i, x, n, q) * krawtchouk(x, j, n, q) for x in range(n + 1))
        assert total == (q**n if i == j else 0)


def test_iter_codewords_count_and_linearity():
    F = build_field(2, 2, "auto", 2)
    G = [[1, 0, 1, 2], [0, 1, 3, 1]]
    words = np.vstack(list(iter_codewords(F, G, 2)))
    assert len(words) == 16 and len({tuple(w) for w in words}) == 16
    H = parity_from_generator(F, G, 4)
    assert all(all(r[0] == 0 for r in matmul_t(F, H, [list(map(int, w))])) for w in words)


def test_low_weight_search_finds_planted_word():
    F = build_field(3, 1)
    n = 12
    rng = np.random.default_rng(5)
    H = random_matrix(F, rng, 8, n, 1)
    res = low_weight_search(F, H, n, 1, n)
    assert res.weight == naive_min_distance(F, nullspace(F, H, n), 1)
    word = res.codeword
    assert sum(1 for x in word if x) == res.weight
    assert all(r[0] == 0 for r in matmul_t(F, H, [word]))


def test_budget_exceeded_carries_lower_bound():
    code = catalog.css_13_9()
    with pytest.raises(BudgetExceeded) as info:
        distance_result(dual_code(code), budget=10)
    assert info.value.lower_bound >= 1


def test_zero_code():
    F = build_field(2, 1)
    assert minimum_distance(F, [[0, 0, 0]], 3, 1).value == 4


def test_length_50_distances_by_low_weight_search():
    got = {nc.name: (min_distance_bruteforce(nc.code), nc.expected_distance) for nc in catalog.length50_codes()}
    assert all(a == b for a, b in got.values()), got
    assert {v[0] for k, v in got.items() if k.startswith("cyclic")} == {2}
