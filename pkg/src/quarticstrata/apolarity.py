"""Catalecticants, apolar ideals and the Betti strata of quaternary quartics."""

import itertools
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .errors import (DegenerateForm, DimensionMismatch, ParseError, TableMismatch,
                     UnsplitScheme, WrongShape, WrongSubtypePath)
from .gfp import DEFAULT_PRIME, DenseMatrix, mat_kernel, mat_rank, univar_roots
from .groebner import Ideal, buchberger
from .poly import LEX, PolyRing, apply_linear_change, contract, monomials_of_degree
from .resolution import (BettiTable, betti_table, generators_from_pieces,
                         minimal_resolution, second_syzygy_rank)

N = 4
DEGREE = 4


def dual_rings(p=DEFAULT_PRIME):
    """(S, R): the operator ring in x and the form ring in y."""
    return PolyRing([f"x{i}" for i in range(N)], p=p), PolyRing([f"y{i}" for i in range(N)], p=p)


def quartic(data, p=DEFAULT_PRIME):
    """A quartic in y0..y3 from text, a Poly, or 35 coefficients.

    Coefficient vectors list the raw coefficients of the degree-4 monomials
    in lex-descending order (y0^4, y0^3*y1, ..., y3^4).
    """
    _, R = dual_rings(p)
    if isinstance(data, str):
        F = R.parse(data)
    elif hasattr(data, "ring"):
        if data.ring.n != N:
            raise DimensionMismatch("quartic must live in four variables")
        F = R.convert(data) if data.ring.names == R.names else \
            R.from_terms([(e, c) for e, c in data.items()])
    else:
        vals = [int(c) for c in data]
        mons = monomials_of_degree(N, DEGREE)
        if len(vals) != len(mons):
            raise DimensionMismatch(f"expected {len(mons)} coefficients, got {len(vals)}")
        F = R.from_terms(list(zip(mons, vals)))
    if F and (not F.is_homogeneous() or F.degree() != DEGREE):
        raise ParseError("expected a homogeneous quartic")
    return F


def coefficient_vector(F):
    return [F.coefficient(m) for m in monomials_of_degree(N, DEGREE)]


def _mfact(e):
    out = 1
    for x in e:
        out *= factorial(x)
    return out


@dataclass
class CatalecticantMatrix:
    """Matrix of G -> G o F from S_u to R_{4-u}.

    Columns use the divided-power basis y^[g] = y^g / g!, so the entry at
    (a, g) is (a+g)! times the coefficient of y^(a+g) in F and the middle
    catalecticant is symmetric.
    """
    u: int
    matrix: DenseMatrix
    row_monomials: tuple
    col_monomials: tuple

    def rank(self):
        return mat_rank(self.matrix, self.matrix.p)

    @property
    def shape(self):
        return self.matrix.shape

    def tolist(self):
        return self.matrix.tolist()

    def to_json(self):
        return {"u": self.u, "rows": [list(m) for m in self.row_monomials],
                "cols": [list(m) for m in self.col_monomials], "matrix": self.tolist(),
                "rank": self.rank()}


def catalecticant(F, u):
    if not 0 <= u <= DEGREE:
        raise DimensionMismatch("contraction degree must lie in 0..4")
    p = F.ring.p
    rows = monomials_of_degree(N, u)
    cols = monomials_of_degree(N, DEGREE - u)
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, a in enumerate(rows):
        for j, g in enumerate(cols):
            s = tuple(x + y for x, y in zip(a, g))
            c = F.coefficient(s)
            if c:
                M[i, j] = c * _mfact(s) % p
    return CatalecticantMatrix(u, DenseMatrix(M, p), rows, cols)


def perp_piece(F, k):
    """Rows spanning F-perp in degree k, over the degree-k monomials."""
    mons = monomials_of_degree(N, k)
    if k > DEGREE:
        return np.eye(len(mons), dtype=np.int64)
    C = catalecticant(F, k).matrix.data
    ker = mat_kernel(C.T.copy(), F.ring.p)
    return np.array(ker, dtype=np.int64).reshape(len(ker), len(mons))


def hilbert_function(F):
    """Hilbert function of S/F-perp in degrees 0..4."""
    return [catalecticant(F, k).rank() for k in range(DEGREE + 1)]


def apolar_ideal(F):
    S, _ = dual_rings(F.ring.p)
    pieces = {k: perp_piece(F, k) for k in range(1, DEGREE + 2)}
    return Ideal(S, generators_from_pieces(pieces, S))


def is_degenerate(F):
    return perp_piece(F, 1).shape[0] > 0


def quadratic_part(F):
    """Q_F: the ideal generated by the quadrics apolar to F."""
    if is_degenerate(F):
        raise DegenerateForm("a linear form annihilates F")
    S, _ = dual_rings(F.ring.p)
    mons = monomials_of_degree(N, 2)
    gens = [S.from_terms([(m, int(c)) for m, c in zip(mons, row) if c]) for row in perp_piece(F, 2)]
    return Ideal(S, gens)


def apolarity_check(I, F):
    """True when every generator of degree <= 4 annihilates F."""
    for g in I.gens:
        if g.degree() > DEGREE:
            continue
        if contract(g, F):
            return False
    return True


# the sixteen admissible tables

TRIPLES = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (3, 0, 0), (3, 1, 0), (3, 2, 0),
           (3, 3, 1), (4, 0, 0), (4, 2, 0), (4, 3, 0), (4, 4, 1), (5, 5, 0), (5, 5, 1),
           (5, 6, 2), (6, 8, 3)]

LABELS = ["000", "100", "200", "210", "300a", "300b", "300c", "310", "320", "331", "400",
          "420", "430", "441a", "441b", "550", "551", "562", "683"]


def _numerator_coeffs(h2):
    h = [1, 4, h2, 4, 1]
    k = [1, -4, 6, -4, 1]
    out = [0] * 9
    for i, a in enumerate(h):
        for j, b in enumerate(k):
            out[i + j] += a * b
    return out


def gorenstein_table(triple):
    """Betti table of S/F-perp for a nondegenerate quartic with the given triple.

    The Hilbert function (1,4,h2,4,1) with h2 = 10 - b12 fixes the alternating
    sums in each degree; Gorenstein symmetry b[i,j] = b[4-i,8-j] does the rest.
    """
    triple = tuple(int(x) for x in triple)
    if triple not in TRIPLES:
        raise TableMismatch(f"no admissible table for [{''.join(map(str, triple))}]")
    b12, b23, b34 = triple
    k = _numerator_coeffs(10 - b12)
    b13 = b23 - k[3]
    b24 = k[4] + 2 * b34
    e = {(0, 0): 1, (1, 2): b12, (1, 3): b13, (1, 4): b34, (2, 3): b23, (2, 4): b24,
         (2, 5): b23, (3, 4): b34, (3, 5): b13, (3, 6): b12, (4, 8): 1}
    return BettiTable(e, N)


# Betti tables of Q_F used to separate subtypes
QF_CI222 = BettiTable.from_rows([[1], [0, 3], [0, 0, 3], [0, 0, 0, 1]])
QF_300C = BettiTable.from_rows([[1], [0, 3], [0, 0, 4, 2]])
QF_441 = BettiTable.from_rows([[1], [0, 4, 4, 1]])

# each pair (small, big): the small stratum lies in the closure of the big one
CLOSURE_EDGES = [
    ("562", "551"), ("551", "550"), ("441a", "420"), ("441b", "430"), ("430", "420"),
    ("320", "300b"), ("300c", "300b"), ("331", "310"), ("310", "300b"), ("210", "200"),
    ("683", "550"), ("550", "420"), ("420", "300b"), ("300b", "300a"), ("300a", "200"),
    ("200", "100"), ("683", "551"), ("550", "430"), ("683", "562"), ("562", "430"),
    ("430", "300c"), ("562", "441b"), ("562", "441a"), ("441a", "310"), ("310", "210"),
    ("441a", "331"), ("331", "210"), ("420", "400"), ("400", "300a"),
]


def _label_key(label):
    return str(label).strip("[]")


def in_closure(small, big):
    """Whether stratum ``small`` lies in the closure of stratum ``big``."""
    a, b = _label_key(small), _label_key(big)
    for x in (a, b):
        if x not in LABELS:
            raise ValueError(f"unknown stratum [{x}]")
    if a == b or b == "000":
        return True
    seen, stack = {a}, [a]
    while stack:
        cur = stack.pop()
        for s, t in CLOSURE_EDGES:
            if s == cur and t not in seen:
                if t == b:
                    return True
                seen.add(t)
                stack.append(t)
    return False


@dataclass
class StratumLabel:
    triple: tuple
    subtype: str = None
    table: BettiTable = None
    details: dict = field(default_factory=dict)

    @property
    def name(self):
        return "".join(map(str, self.triple)) + (self.subtype or "")

    def __str__(self):
        return f"[{self.name}]"

    def to_json(self):
        return {"label": str(self), "triple": list(self.triple), "subtype": self.subtype,
                "table": self.table.to_json() if self.table is not None else None,
                "details": self.details}


def _dehomogenize(f, ring3):
    return ring3.from_terms([(e[:-1], c) for e, c in f.items()])


def split_points(I, rng, attempts=8):
    """Rational points of the zero-dimensional scheme V(I) in P^3.

    A random coordinate change puts the scheme in shape position for lex
    with x3 = 1; the univariate eliminant must then split into distinct
    linear factors.  Returns (points, length).
    """
    ring = I.ring
    p = ring.p
    from .strata import random_gl
    ring3 = PolyRing(list(ring.names[:-1]), LEX, p)
    last = None
    for _ in range(attempts):
        g = random_gl(N, p, rng)
        gens = [_dehomogenize(apply_linear_change(f, g), ring3) for f in I.gens]
        gb = buchberger(gens).polys
        shape = _shape_position(gb)
        if shape is None:
            last = "not in shape position"
            continue
        h, others = shape
        roots = univar_roots(h, p, seed=int(rng.integers(1 << 30)))
        if len(roots) < len(h) - 1:
            raise UnsplitScheme(f"eliminant of degree {len(h) - 1} has {len(roots)} rational roots")
        pts = []
        for r in roots:
            z = [(-f.evaluate((0, 0, r))) % p for f in others] + [r, 1]
            x = [sum(g[i][j] * z[j] for j in range(N)) % p for i in range(N)]
            pts.append(normalize_point(x, p))
        for f in I.gens:
            if any(f.evaluate(x) for x in pts):
                raise WrongShape("split points do not lie on the scheme")
        return pts, len(h) - 1
    raise UnsplitScheme(f"could not bring the scheme into general position ({last})")


def _shape_position(gb):
    """For lex x0 > x1 > x2: (h(x2) ascending coefficients, [x0 - f0, x1 - f1]) or None."""
    by_var = {}
    for f in gb:
        e = f.lead_monomial()
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) != 1:
            return None
        v = nz[0]
        if v < 2 and e[v] != 1:
            return None
        if v in by_var:
            return None
        by_var[v] = f
    if set(by_var) != {0, 1, 2}:
        return None
    for v in (0, 1):
        lead = by_var[v].lead_monomial()
        if any(e[0] or e[1] for e in by_var[v].monomials() if e != lead):
            return None
    hpoly = by_var[2]
    deg = hpoly.lead_monomial()[2]
    h = [0] * (deg + 1)
    for e, c in hpoly.items():
        h[e[2]] = c
    return h, [by_var[0], by_var[1]]


def normalize_point(x, p):
    x = [int(v) % p for v in x]
    lead = next((v for v in x if v), 0)
    if not lead:
        raise DimensionMismatch("the zero vector is not a point")
    inv = pow(lead, p - 2, p)
    return tuple(v * inv % p for v in x)


def _eval_matrix(polys, points):
    return np.array([[f.evaluate(z) for z in points] for f in polys], dtype=np.int64)


def subtype_300(F, seed=0, retries=8, Q=None):
    """'a' or 'b' for a form whose apolar quadrics cut out eight points."""
    Q = Q if Q is not None else quadratic_part(F)
    p = F.ring.p
    if len(Q.gens) != 3 or betti_table(Q) != QF_CI222:
        raise WrongSubtypePath("the apolar quadrics are not a (2,2,2) complete intersection")
    rng = np.random.default_rng(seed)
    pts, length = split_points(Q, rng, attempts=retries)
    if length != 8 or len(pts) != 8:
        raise UnsplitScheme("the complete intersection does not split into eight rational points")
    S, _ = dual_rings(p)
    mons = monomials_of_degree(N, 3)
    cubics = [S.from_terms([(m, int(c)) for m, c in zip(mons, row) if c]) for row in perp_piece(F, 3)]
    E = _eval_matrix(cubics, pts)
    r = mat_rank(E, p)
    for i in range(len(pts)):
        e = np.zeros((1, len(pts)), dtype=np.int64)
        e[0, i] = 1
        if mat_rank(np.vstack([E, e]), p) == r:
            return "b"
    return "a"


def classify(F, seed=0, retries=8):
    """Betti stratum of a nondegenerate quartic."""
    F = quartic(F) if not hasattr(F, "ring") else F
    if not F:
        raise DegenerateForm("the zero form")
    if is_degenerate(F):
        raise DegenerateForm("a linear form annihilates F")
    I = apolar_ideal(F)
    B = betti_table(I)
    triple = B.triple()
    if triple not in TRIPLES or B != gorenstein_table(triple):
        raise TableMismatch(f"computed table {B.compact()} is not admissible")
    h2 = 10 - triple[0]
    details = {"hilbert": [1, 4, h2, 4, 1]}
    subtype = None
    if triple == (3, 0, 0):
        Q = quadratic_part(F)
        QB = betti_table(Q)
        details["quadratic_part"] = QB.compact()
        if QB == QF_300C:
            subtype = "c"
        else:
            subtype = subtype_300(F, seed=seed, retries=retries, Q=Q)
    elif triple == (4, 4, 1):
        Q = quadratic_part(F)
        r = second_syzygy_rank(minimal_resolution(Q))
        details["second_syzygy_rank"] = r
        if r == 3:
            subtype = "a"
        elif r == 4:
            subtype = "b"
        else:
            raise TableMismatch(f"second syzygy rank {r} fits neither subtype")
    return StratumLabel(triple, subtype, B, details)


def power_sum(points, weights=None, p=DEFAULT_PRIME):
    """Sum of weights[i] * l_i^4 where l_i = sum_j points[i][j] y_j."""
    _, R = dual_rings(p)
    ys = R.gens()
    out = R.zero()
    weights = weights if weights is not None else [1] * len(points)
    for z, lam in zip(points, weights):
        lin = R.zero()
        for c, y in zip(z, ys):
            if c % p:
                lin = lin + y.scale(int(c))
        out = out + (lin ** DEGREE).scale(int(lam))
    return out


__all__ = [
    "CLOSURE_EDGES", "CatalecticantMatrix", "LABELS", "QF_300C", "QF_441", "QF_CI222",
    "StratumLabel", "TRIPLES", "apolar_ideal", "apolarity_check", "catalecticant",
    "classify", "coefficient_vector", "dual_rings", "gorenstein_table", "hilbert_function",
    "in_closure", "is_degenerate", "normalize_point", "perp_piece", "power_sum",
    "quadratic_part", "quartic", "split_points", "subtype_300",
]
