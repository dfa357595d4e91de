import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quarticstrata.apolarity import dual_rings
from quarticstrata.errors import DimensionMismatch, ParseError, SingularMatrix
from quarticstrata.gfp import mat_rank
from quarticstrata.poly import GREVLEX, LEX, PolyRing, apply_linear_change, compare, contract

P = 32003
S, R = dual_rings()


def rand_quartic(rng):
    mons = R.monomials_of_degree(4)
    return R.from_terms([(m, int(rng.integers(0, P))) for m in mons])


def test_compare_examples():
    assert compare(GREVLEX, (2, 0, 0, 0), (1, 1, 0, 0)) == 1
    assert compare(GREVLEX, (1, 0, 0, 1), (0, 1, 1, 0)) == -1
    assert compare(LEX, (1, 2, 0, 0), (1, 2, 0, 0)) == 0
    with pytest.raises(DimensionMismatch):
        compare(GREVLEX, (1, 0), (1, 0, 0))


def test_parse_and_print():
    f = S.parse("3*x0^2*x1 - x3 + 2")
    assert f.coefficient((2, 1, 0, 0)) == 3
    assert f.coefficient((0, 0, 0, 1)) == P - 1
    assert S.parse(f.to_text()) == f
    with pytest.raises(ParseError):
        S.parse("x0 + z")


def test_contract_examples():
    y0 = R.var(0)
    assert contract(S.parse("x0^2"), y0 ** 4) == R.parse("12*y0^2")
    assert contract(S.parse("x0*x1"), y0 ** 4).is_zero()


def test_contract_against_sympy():
    ys = sympy.symbols("y0:4")
    rng = np.random.default_rng(5)
    for _ in range(5):
        F = rand_quartic(rng)
        a = tuple(int(v) for v in rng.integers(0, 3, size=4))
        G = S.monomial(a)
        Fs = sum(int(c) * sympy.prod(y ** e for y, e in zip(ys, m)) for m, c in F.items())
        expr = Fs
        for y, e in zip(ys, a):
            expr = sympy.diff(expr, y, e)
        expected = R.from_terms([(tuple(int(x) for x in m), int(c) % P)
                                 for m, c in sympy.Poly(sympy.expand(expr), *ys).terms()]) \
            if expr != 0 else R.zero()
        assert contract(G, F) == expected


def test_contract_power_of_linear_form_evaluates():
    rng = np.random.default_rng(11)
    l = S.parse("x0+x1+x2+x3") ** 4
    for _ in range(10):
        F = rand_quartic(rng)
        lhs = contract(l, F)
        assert lhs.degree() <= 0
        assert lhs.coefficient((0, 0, 0, 0)) == 24 * F.evaluate([1, 1, 1, 1]) % P


def test_contract_is_derivation_in_each_variable():
    rng = np.random.default_rng(2)
    F, G = rand_quartic(rng), rand_quartic(rng)
    x1 = S.var(1)
    assert contract(x1, F * G) == contract(x1, F) * G + F * contract(x1, G)


def test_pairing_is_perfect():
    mons = S.monomials_of_degree(4)
    gram = [[contract(S.monomial(a), R.monomial(b)).coefficient((0, 0, 0, 0)) for b in mons]
            for a in mons]
    assert mat_rank(np.array(gram), P) == 35
    # the Gram matrix is diagonal with entries alpha!
    for i, a in enumerate(mons):
        assert gram[i][i] == math.prod(math.factorial(e) for e in a)


def test_linear_change_examples():
    f = S.parse("x0^2*x3 + 5*x1")
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert apply_linear_change(f, ident) == f
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert apply_linear_change(S.var(0), swap) == S.var(1)
    with pytest.raises(SingularMatrix):
        apply_linear_change(f, [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def rand_gl(rng):
    while True:
        g = rng.integers(0, P, size=(4, 4))
        if mat_rank(g, P) == 4:
            return g.tolist()


def test_linear_change_inverse_and_composition():
    rng = np.random.default_rng(7)
    f = S.parse("x0^3 + 2*x1*x2*x3 - x3^3 + x0*x1^2")
    g, h = rand_gl(rng), rand_gl(rng)
    gi = [[int(v) % P for v in row] for row in sympy.Matrix(g).inv_mod(P).tolist()]
    assert apply_linear_change(apply_linear_change(f, g), gi) == f
    gh = (np.array(g, dtype=object).dot(np.array(h, dtype=object)) % P).tolist()
    assert apply_linear_change(apply_linear_change(f, g), h) == apply_linear_change(f, gh)


mono = st.tuples(*[st.integers(0, 3)] * 4)


@settings(max_examples=200, deadline=None)
@given(mono, mono, mono)
def test_order_axioms(a, b, m):
    for order in (GREVLEX, LEX):
        c = compare(order, a, b)
        assert c == -compare(order, b, a)
        assert (c == 0) == (a == b)
        ma = tuple(x + y for x, y in zip(m, a))
        mb = tuple(x + y for x, y in zip(m, b))
        assert compare(order, ma, mb) == c
        assert compare(order, a, (0, 0, 0, 0)) >= 0


def rand_poly(seed, deg):
    r = random.Random(seed)
    return S.from_terms([(m, r.randrange(P)) for m in S.monomials_of_degree(deg) if r.random() < 0.4])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_ring_laws(seed, da, db, dc):
    a, b, c = rand_poly(seed, da), rand_poly(seed + 1, db), rand_poly(seed + 2, dc)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a and b:
        assert (a * b).degree() == da + db
        assert (a * b).is_homogeneous()
