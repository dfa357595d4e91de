"""Prime field arithmetic and dense linear algebra over GF(p)."""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DivisionByZero, NotPrime, ZeroPolynomial

DEFAULT_PRIME = 32003


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p):
    if not is_prime(p) or p == 2 or p >= 2**31:
        raise NotPrime(f"{p} is not an odd prime below 2^31")
    return p


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.value
        return other % self.p

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other):
        return self * ff_inv(self._coerce(other), self.p)

    def __pow__(self, e):
        if e < 0:
            return FieldElement(ff_inv(self.value, self.p), self.p) ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def inverse(self):
        return FieldElement(ff_inv(self.value, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


def ff_inv(a, p=DEFAULT_PRIME):
    """Inverse of ``a`` modulo ``p``; accepts ints or FieldElements."""
    if isinstance(a, FieldElement):
        return FieldElement(ff_inv(a.value, a.p), a.p)
    a %= p
    if a == 0:
        raise DivisionByZero("0 has no inverse")
    return pow(a, p - 2, p)


class DenseMatrix:
    """Row-major matrix over GF(p) backed by an int64 array."""

    __slots__ = ("data", "p")

    def __init__(self, data, p=DEFAULT_PRIME):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        self.data = arr % p
        self.p = p

    @classmethod
    def zeros(cls, rows, cols, p=DEFAULT_PRIME):
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n, p=DEFAULT_PRIME):
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def transpose(self):
        return DenseMatrix(self.data.T, self.p)

    def __matmul__(self, other):
        return DenseMatrix(matmul_mod(self.data, other.data, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, DenseMatrix) and self.p == other.p \
            and self.shape == other.shape and bool(np.all(self.data == other.data))

    def tolist(self):
        return self.data.tolist()

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols}, p={self.p})"


def matmul_mod(a, b, p):
    """Product mod p without int64 overflow (blocks of the inner dimension)."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (2**62) // (p * p))
    for k in range(0, a.shape[1], step):
        out = (out + a[:, k:k + step] @ b[k:k + step]) % p
    return out


def _as_array(M, p):
    if isinstance(M, DenseMatrix):
        return M.data.copy(), M.p
    return np.array(M, dtype=np.int64) % p, p


def rref(M, p=DEFAULT_PRIME):
    """Return (reduced row echelon form, pivot column list)."""
    a, p = _as_array(M, p)
    if a.size == 0:
        return DenseMatrix(a.reshape(a.shape), p), []
    piv = _kernels.rref_inplace(a, p)
    return DenseMatrix(a, p), [int(c) for c in piv]


def mat_rank(M, p=DEFAULT_PRIME):
    a, p = _as_array(M, p)
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = np.ascontiguousarray(a.T)
    return len(_kernels.rref_inplace(a, p))


def mat_kernel(M, p=DEFAULT_PRIME):
    """Basis of the right kernel as a list of int lists."""
    a, p = _as_array(M, p)
    cols = a.shape[1] if a.ndim == 2 else 0
    if a.size == 0:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    piv = [int(c) for c in _kernels.rref_inplace(a, p)]
    pset = set(piv)
    basis = []
    for f in range(cols):
        if f in pset:
            continue
        v = [0] * cols
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = int(-a[r, f] % p)
        lead = next(x for x in v if x)
        inv = pow(lead, p - 2, p)
        basis.append([x * inv % p for x in v])
    return basis


def kernel_array(a, p):
    """Kernel basis as the rows of an int64 array."""
    vecs = mat_kernel(a, p)
    cols = np.asarray(a).shape[1]
    return np.array(vecs, dtype=np.int64).reshape(len(vecs), cols)


def row_space(a, p):
    """Rows of the RREF spanning the row space of ``a``."""
    a = np.array(a, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0)
    piv = _kernels.rref_inplace(a, p)
    return a[:len(piv)].copy()


# univariate polynomials: coefficient lists, lowest degree first

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def upoly_mod(f, g, p):
    f = _trim(c % p for c in f)
    g = _trim(c % p for c in g)
    if not g:
        raise ZeroPolynomial("division by zero polynomial")
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        f = _trim(f)
    return f


def upoly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def upoly_gcd(f, g, p):
    f = _trim(c % p for c in f)
    g = _trim(c % p for c in g)
    while g:
        f, g = g, upoly_mod(f, g, p)
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def upoly_powmod(base, e, m, p):
    result = [1]
    b = upoly_mod(base, m, p)
    while e:
        if e & 1:
            result = upoly_mod(upoly_mul(result, b, p), m, p)
        b = upoly_mod(upoly_mul(b, b, p), m, p)
        e >>= 1
    return result


def upoly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def univar_roots(f, p=DEFAULT_PRIME, seed=0):
    """Distinct roots in GF(p) of a polynomial given by ascending coefficients.

    Takes gcd(f, x^p - x) and splits it with random shifts (x + a)^((p-1)/2) - 1.
    """
    f = _trim(c % p for c in f)
    if not f:
        raise ZeroPolynomial("the zero polynomial has every root")
    if len(f) == 1:
        return []
    xp = upoly_powmod([0, 1], p, f, p)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = upoly_gcd(f, _trim(xp), p)
    roots = []
    rng = np.random.default_rng(seed)
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append((-h[0]) * pow(h[1], p - 2, p) % p)
            continue
        while True:
            a = int(rng.integers(0, p))
            w = upoly_powmod([a, 1], (p - 1) // 2, h, p)
            w = w + [0] * max(0, 1 - len(w))
            w[0] = (w[0] - 1) % p
            s = upoly_gcd(h, _trim(w), p)
            if 0 < len(s) - 1 < d:
                break
        stack.append(s)
        q = _udiv_exact(h, s, p)
        stack.append(q)
    return sorted(set(roots))


def _udiv_exact(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for k in range(len(q) - 1, -1, -1):
        c = f[k + dg] * inv % p
        q[k] = c
        for i, gc in enumerate(g):
            f[k + i] = (f[k + i] - c * gc) % p
    return _trim(q)
