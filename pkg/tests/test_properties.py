import math
import random

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from quarticstrata.apolarity import apolar_ideal, classify, dual_rings, hilbert_function, power_sum
from quarticstrata.groebner import Ideal, buchberger, check_s_pairs, hilbert
from quarticstrata.poly import contract
from quarticstrata.resolution import betti_table, double_betti, minimal_resolution

from props import P, S, koszul_table, random_ideal_gens

seeds = st.integers(0, 2**31 - 1)
_, R = dual_rings()


@settings(max_examples=50, deadline=None, derandomize=True)
@given(seeds)
def test_gb_unique_under_shuffle(seed):
    gens = random_ideal_gens(seed)
    base = buchberger(gens)
    shuffled = list(gens)
    random.Random(seed + 1).shuffle(shuffled)
    scaled = [g.scale(7) for g in shuffled]
    assert buchberger(shuffled) == base
    assert buchberger(scaled) == base
    assert check_s_pairs(base)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(seeds)
def test_koszul_matches_schreyer(seed):
    I = Ideal(S, random_ideal_gens(seed, max_gens=5))
    B = betti_table(I)
    C = minimal_resolution(I)
    assert C.betti() == B
    assert C.composes_to_zero()
    num = hilbert(I).numerator
    k = max(len(num), len(B.numerator()))
    assert B.numerator() + [0] * (k - len(B.numerator())) == num + [0] * (k - len(num))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(seeds)
def test_betti_bounded_by_initial_ideal(seed):
    I = Ideal(S, random_ideal_gens(seed, max_terms=2))
    lead = I.lead_ideal().to_ideal(S)
    assert betti_table(I) <= betti_table(lead)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(seeds, st.integers(0, 4))
def test_pairing_nondegenerate(seed, k):
    rng = np.random.default_rng(seed)
    mons = S.monomials_of_degree(k)
    G = S.from_terms([(m, int(rng.integers(0, P))) for m in mons])
    if G.is_zero():
        return
    # some monomial of degree k in R pairs nontrivially with G
    assert any(contract(G, R.monomial(m)) for m in mons)
    # and the pairing agrees with the diagonal formula
    F = R.from_terms([(m, int(rng.integers(0, P))) for m in mons])
    fact = lambda e: math.prod(math.factorial(x) for x in e)
    direct = sum(G.coefficient(m) * F.coefficient(m) * fact(m) for m in mons) % P
    assert contract(G, F).coefficient((0, 0, 0, 0)) == direct


@settings(max_examples=25, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow])
@given(seeds, st.integers(1, 9))
def test_power_sums_gorenstein(seed, s):
    rng = np.random.default_rng(seed)
    pts = [[int(x) for x in rng.integers(0, P, size=4)] for _ in range(s)]
    F = power_sum(pts, [int(x) for x in rng.integers(1, P, size=s)])
    B = betti_table(apolar_ideal(F))
    assert B.is_gorenstein_symmetric(4, 8)
    assert 10 - hilbert_function(F)[2] >= 10 - s
    if s >= 4:
        assert B[(1, 2)] >= 10 - s
        lab = classify(F, seed=seed)
        assert lab.table == B


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=3), st.integers(1, 5))
def test_ci_doubling(degrees, extra):
    c = len(degrees)
    n = 3
    gamma = sum(degrees) + extra - (n + 1)
    D = double_betti(koszul_table(degrees), c, n, gamma)
    assert D == koszul_table(degrees + [extra])


@settings(max_examples=100, deadline=None, derandomize=True)
@given(seeds, st.integers(1, 3), st.integers(0, 8))
def test_double_totals(seed, c, gamma):
    r = random.Random(seed)
    entries = {(0, 0): 1}
    for i in range(1, c + 1):
        for j in range(i, i + 3):
            if r.random() < 0.5:
                entries[(i, j)] = r.randint(1, 6)
    from quarticstrata.resolution import BettiTable
    B = BettiTable(entries)
    D = double_betti(B, c, 3, gamma)
    t = B.totals() + [0] * (c + 2)
    assert D.totals()[:c + 2] == [t[i] + t[c + 1 - i] for i in range(c + 2)]
    assert D.is_gorenstein_symmetric(c + 1, 4 + gamma)
