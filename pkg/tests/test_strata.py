import numpy as np
import pytest

from quarticstrata import strata
from quarticstrata.errors import NotPrime
from quarticstrata.groebner import Ideal, MonomialIdeal, ideals_equal, krull_dim
from quarticstrata.pointsets import build_config, points_ideal
from quarticstrata.poly import GREVLEX, PolyRing, monomials_of_degree
from quarticstrata.resolution import BettiTable, betti_table

rows = BettiTable.from_rows

# the six saturated strongly stable ideals of length 6 with their Betti tables
PRINTED = [
    ([(0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 6, 0)], "1,2,1;-;-;-;-;-,1,2,1"),
    ([(1, 0, 0, 0), (0, 1, 1, 0), (0, 2, 0, 0), (0, 0, 5, 0)], "1,1;-,2,3,1;-;-;-,1,2,1"),
    ([(1, 0, 0, 0), (0, 2, 0, 0), (0, 1, 2, 0), (0, 0, 4, 0)], "1,1;-,1,1;-,1,2,1;-,1,2,1"),
    ([(1, 0, 0, 0), (0, 0, 3, 0), (0, 1, 2, 0), (0, 2, 1, 0), (0, 3, 0, 0)], "1,1;-;-,4,7,3"),
    ([(0, 1, 1, 0), (1, 0, 1, 0), (0, 2, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0), (0, 0, 4, 0)],
     "1;-,5,6,2;-;-,1,2,1"),
    ([(1, 0, 1, 0), (0, 2, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0), (0, 0, 3, 0), (0, 1, 2, 0)],
     "1;-,4,4,1;-,2,4,2"),
]


def brute_borel_count(d):
    """Down-closed sets of size d in N^3 that are closed under x_j -> x_i (i > j)."""
    frontier = {frozenset()}
    for _ in range(d):
        nxt = set()
        for N in frontier:
            cands = {(0, 0, 0)} if not N else \
                {tuple(m[k] + (k == v) for k in range(3)) for m in N for v in range(3)}
            for c in cands - N:
                if all(tuple(c[k] - (k == v) for k in range(3)) in N for v in range(3) if c[v]):
                    nxt.add(N | {c})
        frontier = nxt

    def borel(N):
        for m in N:
            for j in range(3):
                for i in range(j + 1, 3):
                    if m[j]:
                        e = list(m)
                        e[j] -= 1
                        e[i] += 1
                        if tuple(e) not in N:
                            return False
        return True
    return sum(1 for N in frontier if borel(N))


def test_is_strongly_stable_examples(J6):
    assert strata.is_strongly_stable(MonomialIdeal(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 6, 0)]))
    assert not strata.is_strongly_stable(MonomialIdeal(4, [(1, 0, 0, 1)]))
    assert strata.is_strongly_stable(J6)


def test_enumerate_d6(S):
    got = strata.enumerate_strongly_stable(6)
    assert {frozenset(J.gens) for J in got} == {frozenset(g) for g, _ in PRINTED}
    for gens, table in PRINTED:
        assert betti_table(MonomialIdeal(4, gens).to_ideal(S)).compact() == table


@pytest.mark.parametrize("d,count", [(4, 3), (5, 4), (6, 6), (7, 9), (8, 12), (9, 17)])
def test_enumeration_counts(d, count):
    got = strata.enumerate_strongly_stable(d)
    assert len(got) == count == brute_borel_count(d)
    for J in got:
        assert strata.is_strongly_stable(J)
        assert strata.is_saturated_monomial(J)
        assert J.hilbert_numerator() is not None
        from quarticstrata.groebner import hilbert
        h = hilbert(J)
        assert h.dim == 1 and h.degree == d


def test_filter(S, J6):
    kept = [J for J in strata.enumerate_strongly_stable(6)
            if not strata.has_linear_generator(J) and strata.regularity(J, S) <= 2]
    assert kept == [J6]


def test_gin_of_six_points(J6):
    I = points_ideal(build_config({"n": 6}, seed=0))
    assert strata.gin(I, seed=0) == J6
    assert betti_table(I) == rows([[1], [0, 4, 2], [0, 0, 3, 2]])


def test_gin_fixed_points_and_regularity(S, J6):
    assert strata.gin(J6.to_ideal(S)) == J6
    q = [S.parse("x0^2 + x1*x2 - x3^2"), S.parse("x1^2 - 3*x0*x3 + x2^2"),
         S.parse("x2^2 + 5*x0*x1 - x1*x3")]
    I = Ideal(S, q)
    G = strata.gin(I, seed=1)
    assert strata.is_strongly_stable(G)
    assert strata.regularity(G, S) == betti_table(I).regularity()


def test_small_prime_rejected():
    small = PolyRing(["x0", "x1", "x2", "x3"], p=97)
    with pytest.raises(NotPrime):
        strata.gin(Ideal(small, [small.var(0)]))
    with pytest.raises(NotPrime):
        strata.groebner_family(MonomialIdeal(4, [(1, 0, 0, 0)]), p=97)


def test_family_shape(family):
    assert family.nparams == 36
    assert family.T.names[0] == "t1" and family.T.names[-1] == "t36"
    f = next(g for g in family.generators if g.lead_monomial() == (2, 0, 0, 0))
    tails = {m for m in f.monomials() if m != (2, 0, 0, 0)}
    assert tails == {(0, 1, 1, 0), (0, 0, 2, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
                     (0, 0, 0, 2)}
    for g in family.generators:
        assert family.U.cops.is_constant(g.lead_coeff())
    # weight homogeneity of each generator
    w = family.weights
    for g in family.generators:
        wts = {sum(a * b for a, b in zip(w, m)) + family.T.codec.degree(t)
               for m, c in g.items() for t in c}
        assert len(wts) == 1


def test_family_param_count_oracle():
    J = MonomialIdeal(4, [(2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0),
                          (0, 0, 3, 0)])
    fam = strata.groebner_family(J)
    expected = 0
    for a in J.gens:
        for g in monomials_of_degree(4, sum(a)):
            if not J.contains(g) and GREVLEX.key(g) < GREVLEX.key(a):
                expected += 1
    assert fam.nparams == expected


def test_trivial_family():
    J = MonomialIdeal(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    fam = strata.groebner_family(J)
    # x3 is standard and smaller than each generator: the affine chart of one point
    assert fam.nparams == 3
    L = strata.groebner_stratum(fam)
    assert L.gens == [] and L.dim() == 3


def test_stratum(stratum):
    assert stratum.dim() == 18
    assert stratum.is_weight_homogeneous()
    assert stratum.vanishes_at([0] * 36)


def test_harvested_points_are_flat(family, stratum, maps, family_res, J6):
    profile = family_res.complex().betti()
    allowed = {rows([[1], [0, 4, 2], [0, 0, 3, 2]]), rows([[1], [0, 4, 3], [0, 1, 3, 2]]),
               rows([[1], [0, 4, 4, 1], [0, 2, 4, 2]])}
    for seed, cons in enumerate([[], [], [], ["3 collinear"], ["3+3 skew lines"]]):
        I = points_ideal(build_config({"n": 6, "constraints": cons}, seed=seed))
        point, Ig = strata.harvest_generic(family, I, seed=seed)
        assert stratum.vanishes_at(point)
        spec = strata.specialize(family, point)
        assert spec.lead_ideal() == J6
        B = strata.betti_at(family, maps, profile, point)
        assert B in allowed
        assert B == betti_table(I)


def test_specialize_zero(family, J6, S):
    assert strata.specialize(family, family.zero_point()) == J6.to_ideal(S)


def test_resolution_shape(family, family_res, maps):
    C = family_res.complex()
    assert C.ranks() == [1, 6, 10, 6, 1]
    assert C.betti() == rows([[1], [0, 4, 4, 2], [0, 2, 5, 3, 1], [0, 0, 1, 1]])
    assert maps.keys() == [(2, 3), (3, 4), (3, 5), (4, 6)]
    assert [maps.shape(k) for k in maps.keys()] == [(2, 4), (5, 2), (1, 3), (1, 1)]
    assert strata.resolution_weight_homogeneous(family_res, family)


def test_resolution_composes_mod_L(family_res, stratum):
    assert strata.complex_composes_mod(family_res.complex(), stratum)


def test_minors_m2_equal_minors_m1_mod_L(family, stratum, maps):
    T = family.T
    m1 = strata.minors_ideal(1, maps.as_polys((2, 3)), stratum.ideal)
    m2 = strata.minors_ideal(2, maps.as_polys((3, 4)), stratum.ideal)
    assert ideals_equal(m1, m2)


def test_L441(stratum, maps):
    I441 = strata.rank_locus_ideal(stratum.ideal, maps, {(2, 3): 0})
    assert krull_dim(I441) == 16
    # containment of the generating minors: minors_2(M1) lie in L441
    m2 = strata.minors(2, maps.as_polys((2, 3)), stratum.ring)
    assert all(I441.contains(g) for g in m2)
