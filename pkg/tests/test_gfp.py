import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quarticstrata import _kernels
from quarticstrata.errors import DivisionByZero, NotPrime, ZeroPolynomial
from quarticstrata.gfp import (DEFAULT_PRIME, DenseMatrix, FieldElement, check_prime, ff_inv,
                               mat_kernel, mat_rank, rref, univar_roots, upoly_mul)

P = DEFAULT_PRIME


def test_ff_inv_examples():
    assert ff_inv(1) == 1
    assert ff_inv(P - 1) == P - 1
    assert ff_inv(2) == 16002
    assert 2 * 16002 % P == 1


def test_ff_inv_zero():
    with pytest.raises(DivisionByZero):
        ff_inv(0)
    with pytest.raises(DivisionByZero):
        FieldElement(0).inverse()


def test_field_element_laws():
    a, b = FieldElement(12345), FieldElement(777)
    assert (a * b) / b == a
    assert a - a == FieldElement(0)
    assert (a ** (P - 1)).value == 1


def test_check_prime():
    assert check_prime(32003) == 32003
    for bad in (1, 2, 15, 32001):
        with pytest.raises(NotPrime):
            check_prime(bad)


def test_rank_examples():
    assert mat_rank(DenseMatrix.identity(3)) == 3
    assert mat_rank(DenseMatrix.zeros(2, 5)) == 0


def test_kernel_examples():
    assert mat_kernel(DenseMatrix.identity(4)) == []
    assert mat_kernel(DenseMatrix([[1, 1]])) == [[1, P - 1]]


def test_univar_roots_examples():
    assert univar_roots([-1, 0, 1]) == [1, P - 1]
    assert univar_roots([1, 0, 1]) == []
    assert univar_roots([0, -5, 1]) == [0, 5]
    with pytest.raises(ZeroPolynomial):
        univar_roots([0, 0])


def test_minus_one_nonresidue():
    # Euler criterion, independent of the root finder
    assert pow(P - 1, (P - 1) // 2, P) == P - 1


def test_kernels_agree():
    rng = np.random.default_rng(3)
    for shape in [(5, 9), (30, 20), (40, 60)]:
        a = rng.integers(0, P, size=shape)
        a[:, 2] = a[:, 0] + a[:, 1]
        x, y = a.copy().astype(np.int64), a.copy().astype(np.int64)
        px = _kernels.rref_np(x, P)
        if _kernels.HAS_NUMBA:
            py = _kernels.rref_nb(y, P)
            assert list(px) == list(py)
            assert np.array_equal(x, y)


small = st.integers(min_value=1, max_value=12)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rank_nullity(data):
    r = data.draw(small)
    c = data.draw(small)
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    k = data.draw(st.integers(1, 13))
    a = (rng.integers(0, k, size=(r, c)) * rng.integers(0, 3, size=(r, c))) % 13
    rank = mat_rank(a, 13)
    kern = mat_kernel(a, 13)
    assert rank + len(kern) == c
    assert rank == mat_rank(a.T, 13)
    for v in kern:
        assert not (a @ np.array(v) % 13).any()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 20), st.integers(1, 20))
def test_rref_idempotent_and_permutation_invariant(seed, r, c):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 7, size=(r, c)) * rng.integers(0, 2, size=(r, c))
    R, piv = rref(a, 101)
    R2, piv2 = rref(R, 101)
    assert R2 == R and piv == piv2
    pr, pc = rng.permutation(r), rng.permutation(c)
    assert mat_rank(a[pr][:, pc], 101) == len(piv)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=6),
       st.lists(st.integers(0, 30), min_size=1, max_size=6))
def test_roots_of_product(r1, r2):
    p = 31

    def from_roots(rs):
        f = [1]
        for r in rs:
            f = upoly_mul(f, [-r % p, 1], p)
        return f

    f, g = from_roots(r1), from_roots(r2)
    assert univar_roots(upoly_mul(f, g, p), p) == sorted(set(r1) | set(r2))
