"""Finite point sets in P^3: ideals, seeded configuration builders and the point-table check."""

import re
import time
from dataclasses import dataclass, field

import numpy as np

from .apolarity import normalize_point, split_points
from .errors import ConstraintUnsatisfiable, DuplicatePoint, RetriesExhausted, UnsplitScheme
from .gfp import DEFAULT_PRIME, mat_kernel, mat_rank
from .groebner import Ideal
from .poly import PolyRing, monomials_of_degree
from .resolution import BettiTable, betti_table, generators_from_pieces
from ._util import parallel_map

N = 4


@dataclass
class PointConfig:
    points: list
    p: int = DEFAULT_PRIME
    tags: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = [normalize_point(z, self.p) for z in self.points]
        if len(set(pts)) != len(pts):
            raise DuplicatePoint("two points coincide after normalization")
        self.points = pts

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {"points": [list(z) for z in self.points], "prime": self.p, "tags": self.tags}


def _ring(p):
    return PolyRing([f"x{i}" for i in range(N)], p=p)


def evaluation_matrix(points, d, p):
    """Rows: points; columns: degree-d monomials (lex-descending)."""
    mons = monomials_of_degree(N, d)
    M = np.zeros((len(points), len(mons)), dtype=np.int64)
    for i, z in enumerate(points):
        for j, m in enumerate(mons):
            v = 1
            for x, e in zip(z, m):
                if e:
                    v = v * pow(x, e, p) % p
            M[i, j] = v
    return M


def hilbert_function(cfg, upto=None):
    """Values of the Hilbert function of S/I in degrees 0..upto (default: until it reaches n)."""
    pts = cfg.points
    out = []
    d = 0
    while True:
        out.append(mat_rank(evaluation_matrix(pts, d, cfg.p), cfg.p) if d else 1)
        if (upto is None and out[-1] == len(pts)) or (upto is not None and d >= upto):
            return out
        d += 1


def artinian_hf(cfg):
    """First difference of the Hilbert function: that of a general Artinian reduction."""
    hf = hilbert_function(cfg)
    diff = [hf[0]] + [b - a for a, b in zip(hf, hf[1:])]
    while diff and diff[-1] == 0:
        diff.pop()
    return diff


def points_ideal(cfg):
    if not isinstance(cfg, PointConfig):
        cfg = PointConfig(list(cfg))
    if not cfg.points:
        raise ConstraintUnsatisfiable("at least one point is needed")
    p = cfg.p
    S = _ring(p)
    stable = len(hilbert_function(cfg)) - 1
    pieces = {}
    for d in range(1, stable + 2):
        ker = mat_kernel(evaluation_matrix(cfg.points, d, p), p)
        pieces[d] = np.array(ker, dtype=np.int64).reshape(len(ker), len(monomials_of_degree(N, d)))
    return Ideal(S, generators_from_pieces(pieces, S))


# builders

def _rand_point(rng, p):
    while True:
        z = rng.integers(0, p, size=N)
        if z.any():
            return [int(v) for v in z]


def _combo(rng, p, basis):
    """Random point in the span of ``basis``."""
    while True:
        cs = rng.integers(0, p, size=len(basis))
        z = [int(sum(int(c) * b[i] for c, b in zip(cs, basis)) % p) for i in range(N)]
        if any(z):
            return z


def _on_line(rng, p, k):
    a, b = _rand_point(rng, p), _rand_point(rng, p)
    return [_combo(rng, p, [a, b]) for _ in range(k)]


def _on_plane(rng, p, k):
    basis = [_rand_point(rng, p) for _ in range(3)]
    return [_combo(rng, p, basis) for _ in range(k)]


def _twisted_cubic(rng, p, k):
    from .strata import random_gl
    g = random_gl(N, p, rng)
    out = []
    for _ in range(k):
        s, t = (int(v) for v in rng.integers(0, p, size=2))
        if not (s or t):
            s = 1
        z = [s ** 3 % p, s * s * t % p, s * t * t % p, t ** 3 % p]
        out.append([sum(g[i][j] * z[j] for j in range(N)) % p for i in range(N)])
    return out


def _ci222(rng, p, k):
    """k of the eight base points of a net of quadrics through seven random points."""
    seven = [_rand_point(rng, p) for _ in range(7)]
    S = _ring(p)
    mons = monomials_of_degree(N, 2)
    ker = mat_kernel(evaluation_matrix([normalize_point(z, p) for z in seven], 2, p), p)
    quads = [S.from_terms([(m, int(c)) for m, c in zip(mons, row) if c]) for row in ker]
    if len(quads) != 3:
        raise UnsplitScheme("seven points failed to impose independent conditions")
    pts, length = split_points(Ideal(S, quads), rng)
    if length != 8 or len(pts) != 8:
        raise UnsplitScheme("net of quadrics is not a complete intersection of eight points")
    known = {normalize_point(z, p) for z in seven}
    extra = [z for z in pts if z not in known]
    ordered = [list(z) for z in seven] + [list(z) for z in extra]
    return ordered[:k]


def _skew_lines(rng, p, a, b):
    return _on_line(rng, p, a) + _on_line(rng, p, b)


_PATTERNS = [
    (re.compile(r"^(\d+)\s*collinear$"), "collinear"),
    (re.compile(r"^(\d+)\s*coplanar$"), "coplanar"),
    (re.compile(r"^(\d+)\s*in a (plane|line)$"), "in"),
    (re.compile(r"^(\d+)\s*\+\s*(\d+)\s*(on (two )?)?skew lines$"), "skew"),
    (re.compile(r"^ci\(2,\s*2,\s*2\)$"), "ci222"),
    (re.compile(r"^(on )?(a )?twisted cubic$"), "cubic"),
    (re.compile(r"^(general|ci\(2,\s*2\)|no .*)$"), "general"),
]


def parse_constraint(text):
    t = text.strip().lower()
    for rx, kind in _PATTERNS:
        m = rx.match(t)
        if not m:
            continue
        if kind == "in":
            return ("collinear" if m.group(2) == "line" else "coplanar", int(m.group(1)))
        if kind in ("collinear", "coplanar"):
            return (kind, int(m.group(1)))
        if kind == "skew":
            return ("skew", int(m.group(1)), int(m.group(2)))
        return (kind,)
    raise ConstraintUnsatisfiable(f"unknown constraint {text!r}")


def _sample(n, constraints, rng, p):
    pts = []
    tags = {}
    for c in constraints:
        kind = c[0]
        start = len(pts)
        if kind == "collinear":
            pts += _on_line(rng, p, c[1])
        elif kind == "coplanar":
            pts += _on_plane(rng, p, c[1])
        elif kind == "skew":
            pts += _skew_lines(rng, p, c[1], c[2])
        elif kind == "ci222":
            pts += _ci222(rng, p, n - len(pts))
        elif kind == "cubic":
            pts += _twisted_cubic(rng, p, n - len(pts))
        else:
            continue
        tags.setdefault(kind, []).append(list(range(start, len(pts))))
    while len(pts) < n:
        pts.append(_rand_point(rng, p))
    return pts, tags


def _check_constraints(n, constraints):
    if not 1 <= n <= 9:
        raise ConstraintUnsatisfiable("configurations have between 1 and 9 points")
    used = 0
    for c in constraints:
        if c[0] in ("collinear", "coplanar"):
            used += c[1]
        elif c[0] == "skew":
            used += c[1] + c[2]
        elif c[0] == "ci222" and not 1 <= n - used <= 8:
            raise ConstraintUnsatisfiable("a (2,2,2) complete intersection has eight points")
    if used > n:
        raise ConstraintUnsatisfiable(f"constraints need {used} points but n = {n}")


def build_config(spec, seed=0, retries=8, expected=None, p=DEFAULT_PRIME):
    """Seeded random configuration meeting ``spec = {"n": .., "constraints": [..]}``.

    With ``expected`` (a BettiTable) the builder resamples until the computed
    table matches, guarding against accidental extra degeneration.
    """
    n = int(spec["n"])
    raw = spec.get("constraints", [])
    if isinstance(raw, str):
        raw = [raw]
    constraints = [parse_constraint(c) for c in raw]
    _check_constraints(n, constraints)
    ss = np.random.SeedSequence(seed)
    last = None
    for child in ss.spawn(retries):
        rng = np.random.default_rng(child)
        try:
            pts, tags = _sample(n, constraints, rng, p)
            cfg = PointConfig(pts, p, {"constraints": list(raw), **tags})
        except (DuplicatePoint, UnsplitScheme) as exc:
            last = str(exc)
            continue
        if expected is None:
            return cfg
        got = betti_table(points_ideal(cfg))
        if got == expected:
            return cfg
        last = f"got {got.compact()}"
    raise RetriesExhausted(f"no configuration after {retries} attempts ({last})")


# the point table

def _t(row1, row2=(), row3=()):
    rows = [[1], [0] + list(row1)]
    if row2 or row3:
        rows.append([0] + list(row2))
    if row3:
        rows.append([0] + list(row3))
    return BettiTable.from_rows(rows)


POINT_TABLE = [
    ("1", "four points spanning P3", 4, [], _t([6, 8, 3])),
    ("2", "five points, no four in a plane", 5, [], _t([5, 5, 0], [0, 0, 1])),
    ("3", "five points, four in a plane", 5, ["4 coplanar"], _t([5, 5, 1], [0, 1, 1])),
    ("4", "five points, three in a line", 5, ["3 collinear"], _t([5, 6, 2], [1, 2, 1])),
    ("5", "six points, no five in a plane", 6, [], _t([4, 2, 0], [0, 3, 2])),
    ("6", "six points, three in a line", 6, ["3 collinear"], _t([4, 3, 0], [1, 3, 2])),
    ("7a", "six points, five in a plane", 6, ["5 coplanar"], _t([4, 4, 1], [2, 4, 2])),
    ("7b", "three on each of two skew lines", 6, ["3+3 skew lines"], _t([4, 4, 1], [2, 4, 2])),
    ("8a", "seven points in a CI", 7, ["CI(2,2,2)"], _t([3, 0, 0], [1, 6, 3])),
    ("8b", "seven points, three collinear", 7, ["3 collinear"], _t([3, 0, 0], [1, 6, 3])),
    ("9", "seven points, five in a plane", 7, ["5 coplanar"], _t([3, 1, 0], [2, 6, 3])),
    ("10", "seven points on a twisted cubic", 7, ["twisted cubic"], _t([3, 2, 0], [3, 6, 3])),
    ("11", "seven points, six in a plane", 7, ["6 coplanar"], _t([3, 3, 1], [4, 7, 3])),
    ("12", "complete intersection of eight points", 8, ["CI(2,2,2)"],
     _t([3, 0, 0], [0, 3, 0], [0, 0, 1])),
    ("13", "eight points, no six in a plane, not a CI", 8, [], _t([2, 0, 0], [4, 9, 4])),
    ("14a", "eight points, six in a plane", 8, ["6 coplanar"], _t([2, 1, 0], [5, 9, 4])),
    ("14b", "eight points, five in a plane and three in a line", 8,
     ["5 coplanar", "3 collinear"], _t([2, 1, 0], [5, 9, 4])),
    ("15", "nine points on a unique quadric", 9, [], _t([1, 0, 0], [7, 12, 5])),
]


def _verify_row(args):
    (row, desc, n, cons, expected), seed, p = args
    t0 = time.perf_counter()
    cfg = build_config({"n": n, "constraints": cons}, seed=seed, p=p)
    got = betti_table(points_ideal(cfg))
    return {"row": row, "description": desc, "expected": expected.compact(),
            "computed": got.compact(), "pass": got == expected,
            "seconds": round(time.perf_counter() - t0, 3)}


def verify_point_tables(seed=0, p=DEFAULT_PRIME):
    """One seeded configuration per row; compares the computed Betti table with the table entry."""
    return parallel_map(_verify_row, [(r, seed, p) for r in POINT_TABLE])


def table_rows_passed(report):
    """Number of numbered rows all of whose variants pass."""
    byrow = {}
    for r in report:
        key = r["row"].rstrip("ab")
        byrow[key] = byrow.get(key, True) and r["pass"]
    return sum(byrow.values()), len(byrow)


__all__ = [
    "POINT_TABLE", "PointConfig", "artinian_hf", "build_config", "evaluation_matrix",
    "hilbert_function", "parse_constraint", "points_ideal", "table_rows_passed",
    "verify_point_tables",
]
