"""Row reduction over GF(p) on int64 arrays.

The numba versions are used unless ``STRATA_DISABLE_NUMBA`` is set to a
non-empty value other than ``0`` (or numba is missing); the numpy versions
are always importable so the benchmark can compare the two.
"""

import os

import numpy as np

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

_flag = os.environ.get("STRATA_DISABLE_NUMBA", "")
USE_NUMBA = HAS_NUMBA and _flag in ("", "0")


def rref_np(a, p):
    """In-place reduced row echelon form; returns the pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


if HAS_NUMBA:
    @njit(cache=True)
    def _inv_nb(x, p):
        r = 1
        e = p - 2
        b = x % p
        while e > 0:
            if e & 1:
                r = (r * b) % p
            b = (b * b) % p
            e >>= 1
        return r

    @njit(cache=True)
    def rref_nb(a, p):
        rows, cols = a.shape
        piv = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = t
            inv = _inv_nb(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
            piv[r] = c
            r += 1
        return piv[:r]
else:  # pragma: no cover
    rref_nb = None


def rref_inplace(a, p):
    if USE_NUMBA:
        return rref_nb(a, p)
    return rref_np(a, p)
