"""Betti tables, Schreyer resolutions and their degree-0 strands."""

import itertools
import json
from math import comb

import numpy as np

from .errors import InconsistentRanks, WrongShape
from .gfp import mat_rank, row_space
from .groebner import GroebnerBasis, Ideal, buchberger, minimalize
from .poly import Poly, monomials_of_degree


class BettiTable:
    """Graded Betti numbers b[i, j] of a cyclic module S/I."""

    def __init__(self, entries=None, nvars=4):
        self.entries = {}
        for (i, j), b in (entries or {}).items():
            if b < 0:
                raise ValueError("Betti numbers are nonnegative")
            if b:
                self.entries[(int(i), int(j))] = int(b)
        self.nvars = nvars
        self.flags = {}

    @classmethod
    def from_rows(cls, rows, nvars=4):
        """rows[r][i] = b[i, i + r]; '-', '.', None and 0 all mean zero."""
        entries = {}
        for r, row in enumerate(rows):
            for i, b in enumerate(row):
                if b in (None, "-", ".", 0):
                    continue
                entries[(i, i + r)] = int(b)
        return cls(entries, nvars)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __le__(self, other):
        return all(b <= other[k] for k, b in self.entries.items())

    def totals(self):
        pd = self.projdim()
        return [sum(b for (i, _), b in self.entries.items() if i == k) for k in range(pd + 1)]

    def projdim(self):
        return max((i for i, _ in self.entries), default=0)

    def regularity(self):
        return max((j - i for i, j in self.entries), default=0)

    def row(self, r):
        return [self[(i, i + r)] for i in range(self.projdim() + 1)]

    def rows(self):
        return [self.row(r) for r in range(self.regularity() + 1)]

    def triple(self):
        return (self[(1, 2)], self[(2, 3)], self[(3, 4)])

    def numerator(self):
        """Alternating sum of t^j, i.e. the K-polynomial of the module."""
        top = max((j for _, j in self.entries), default=0)
        out = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            out[j] += (-1) ** i * b
        return out

    def is_gorenstein_symmetric(self, codim, socle_shift):
        return all(self[(codim - i, socle_shift - j)] == b for (i, j), b in self.entries.items())

    def render(self):
        pd = self.projdim()
        reg = self.regularity()
        cols = list(range(pd + 1))
        cells = [[str(c) for c in cols], [str(t) for t in self.totals()]]
        for r in range(reg + 1):
            cells.append([str(self[(i, i + r)]) if self[(i, i + r)] else "." for i in cols])
        labels = [""] + ["total:"] + [f"{r}:" for r in range(reg + 1)]
        lw = max(len(s) for s in labels)
        widths = [max(len(row[k]) for row in cells) for k in range(len(cols))]
        lines = []
        for lab, row in zip(labels, cells):
            body = " ".join(v.rjust(w) for v, w in zip(row, widths))
            lines.append(f"{lab.rjust(lw)} {body}")
        return "\n".join(lines)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BettiTable({self.compact()})"

    def compact(self):
        """Rows joined by ';', entries by ',', zero as '-' (trailing zeros dropped)."""
        parts = []
        for row in self.rows():
            while row and row[-1] == 0:
                row = row[:-1]
            parts.append(",".join(str(b) if b else "-" for b in row) or "-")
        return ";".join(parts)

    def to_json(self):
        return {"entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())]}

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data, nvars=4):
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(i, j): b for i, j, b in data["entries"]}, nvars)


# graded pieces of S/I

class GradedQuotient:
    """Monomial bases and multiplication maps of S/I from a Groebner basis."""

    def __init__(self, gb):
        self.gb = gb
        self.ring = gb.ring
        self.n = gb.ring.n
        self.lead = gb.lead_ideal()
        self._basis = {}
        self._mult = {}

    def basis(self, k):
        if k not in self._basis:
            mons = self.lead.standard_monomials(k) if k >= 0 else []
            codes = [self.ring.codec.encode(m) for m in mons]
            self._basis[k] = (mons, {c: i for i, c in enumerate(codes)}, codes)
        return self._basis[k]

    def dim(self, k):
        return len(self.basis(k)[0])

    def mult(self, v, k):
        """Matrix of multiplication by x_v from degree k to degree k+1."""
        key = (v, k)
        if key not in self._mult:
            _, _, codes = self.basis(k)
            _, idx1, _ = self.basis(k + 1)
            M = np.zeros((len(idx1), len(codes)), dtype=np.int64)
            unit = self.ring.codec.units[v]
            for col, c in enumerate(codes):
                nf = self.gb.reduce_raw({c + unit: 1})
                for m, coef in nf.items():
                    M[idx1[m], col] = coef
            self._mult[key] = M
        return self._mult[key]


def graded_piece_basis(I, d):
    """Rows spanning I_d over the degree-d monomials (lex-descending order)."""
    gb = I.gb()
    ring = I.ring
    mons = monomials_of_degree(ring.n, d)
    index = {ring.codec.encode(m): i for i, m in enumerate(mons)}
    rows = []
    for m in mons:
        code = ring.codec.encode(m)
        nf = gb.reduce_raw({code: 1})
        v = np.zeros(len(mons), dtype=np.int64)
        v[index[code]] = 1
        for c, coef in nf.items():
            v[index[c]] = (v[index[c]] - coef) % ring.p
        rows.append(v)
    if not rows:
        return np.zeros((0, len(mons)), dtype=np.int64)
    return row_space(np.array(rows), ring.p)


def _koszul_matrix(Q, i, j):
    """Matrix of d: Lambda^i V (x) A_{j-i} -> Lambda^{i-1} V (x) A_{j-i+1}."""
    n = Q.n
    src = list(itertools.combinations(range(n), i))
    dst = {s: k for k, s in enumerate(itertools.combinations(range(n), i - 1))}
    da, db = Q.dim(j - i), Q.dim(j - i + 1)
    M = np.zeros((len(dst) * db, len(src) * da), dtype=np.int64)
    if da == 0 or db == 0:
        return M
    p = Q.ring.p
    for col, S in enumerate(src):
        for r, v in enumerate(S):
            face = S[:r] + S[r + 1:]
            row = dst[face]
            block = Q.mult(v, j - i)
            if r % 2:
                block = (-block) % p
            M[row * db:(row + 1) * db, col * da:(col + 1) * da] = block
    return M


def koszul_betti(gb, positions=None):
    """Betti table of S/I from Koszul homology of the graded pieces."""
    Q = GradedQuotient(gb)
    n = Q.n
    p = Q.ring.p
    if positions is None:
        positions = frame_profile(gb.lead_monomials(), gb.ring).keys()
    ranks = {}

    def rank(i, j):
        if i <= 0 or i > n or j - i < 0:
            return 0
        if (i, j) not in ranks:
            M = _koszul_matrix(Q, i, j)
            ranks[(i, j)] = mat_rank(M, p) if M.size else 0
        return ranks[(i, j)]

    entries = {}
    for i, j in positions:
        dimk = comb(n, i) * Q.dim(j - i)
        b = dimk - rank(i, j) - rank(i + 1, j)
        if b:
            entries[(i, j)] = b
    return BettiTable(entries, n)


def betti_table(I):
    """Graded Betti numbers of S/I (Koszul strand homology)."""
    if isinstance(I, Ideal):
        if I.is_zero():
            return BettiTable({(0, 0): 1}, I.ring.n)
        return koszul_betti(I.gb())
    if isinstance(I, GroebnerBasis):
        return koszul_betti(I)
    raise TypeError("betti_table expects an Ideal or GroebnerBasis")


# Schreyer frames

class FrameElement:
    """Basis element of a frame level; ``path`` lists its ancestors' indices
    from level 1 up to itself, which is the tie-break of the induced order."""

    __slots__ = ("level", "index", "comp", "total", "degree", "path", "vector")

    def __init__(self, level, index, comp, total, degree, path, vector=None):
        self.level = level
        self.index = index
        self.comp = comp
        self.total = total
        self.degree = degree
        self.path = path
        self.vector = vector

    def __repr__(self):
        return f"FrameElement(level={self.level}, index={self.index}, comp={self.comp}, degree={self.degree})"


def _quotient_gens(earlier, m, codec):
    """Minimal generators of (earlier) : m as packed monomials."""
    K = codec.K
    qs = sorted({codec.lcm(e, m) - m + K for e in earlier})
    out = []
    for q in qs:
        if not any(codec.divides(r, q) for r in out):
            out = [r for r in out if not codec.divides(q, r)]
            out.append(q)
    return out


def frame_levels(lead_codes, ring, max_level=None):
    """Schreyer frame (lists of FrameElement without vectors) for a lead ideal.

    Siblings at level k are ordered by ascending exponent of variable n-k,
    then by term order; syzygy leads at level k+1 then avoid the last k
    variables, so the frame has length at most n.
    """
    codec = ring.codec
    K = codec.K
    deg = codec.degree
    n = ring.n

    def sib_key(level, t):
        v = n - level
        return (codec.decode(t)[v] if v >= 0 else 0, t)

    levels = [[FrameElement(0, 0, None, codec.one, 0, ())]]
    first = sorted(lead_codes, key=lambda t: sib_key(1, t))
    levels.append([FrameElement(1, i, 0, m, deg(m), (i,)) for i, m in enumerate(first)])
    max_level = n if max_level is None else max_level
    k = 1
    while levels[-1] and k < max_level:
        prev = levels[-1]
        seen = {}
        new = []
        for e in prev:
            earlier = seen.setdefault(e.comp, [])
            for q in _quotient_gens(earlier, e.total, codec):
                tot = q + e.total - K
                new.append((e.path, sib_key(k + 1, tot), e.index, tot))
            earlier.append(e.total)
        new.sort()
        levels.append([FrameElement(k + 1, i, c, t, deg(t), pth + (i,))
                       for i, (pth, _, c, t) in enumerate(new)])
        k += 1
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    return levels


def frame_profile(lead_monomials, ring):
    """{(i, j): count} of the Schreyer frame of the monomial ideal."""
    codes = [ring.codec.encode(m) for m in minimalize(lead_monomials)]
    out = {}
    for level in frame_levels(codes, ring):
        for e in level:
            out[(e.level, e.degree)] = out.get((e.level, e.degree), 0) + 1
    return out


class SchreyerResolution:
    """Frame plus syzygy vectors.

    Each element's ``vector`` maps (packed total monomial, path of an
    element at the previous level) to a coefficient; the x-part of the entry
    is the total monomial divided by that element's total monomial.  Keys
    compare exactly as the induced Schreyer order.
    """

    def __init__(self, ring, levels, leftovers):
        self.ring = ring
        self.levels = levels
        self.leftovers = leftovers

    def ranks(self):
        return [len(l) for l in self.levels]

    def profile(self):
        out = {}
        for level in self.levels:
            for e in level:
                out[(e.level, e.degree)] = out.get((e.level, e.degree), 0) + 1
        return out

    def frame_betti(self):
        return BettiTable(self.profile(), self.ring.n)

    def entry_poly(self, k, row, col):
        """Entry of d_k between level-(k-1) element ``row`` and level-k element ``col``."""
        ring = self.ring
        K = ring.codec.K
        tgt = self.levels[k - 1][row]
        terms = {}
        for (t, pth), c in self.levels[k][col].vector.items():
            if (pth[-1] if pth else 0) == row:
                terms[t - tgt.total + K] = c
        return Poly(ring, terms)

    def differential(self, k):
        """d_k as a list of rows of polynomials."""
        src, dst = self.levels[k], self.levels[k - 1]
        ring = self.ring
        K = ring.codec.K
        rows = [[{} for _ in src] for _ in dst]
        for col, e in enumerate(src):
            for (t, pth), c in e.vector.items():
                idx = pth[-1] if pth else 0
                rows[idx][col][t - dst[idx].total + K] = c
        return [[Poly(ring, d) for d in row] for row in rows]

    def complex(self):
        maps = [self.differential(k) for k in range(1, len(self.levels))]
        twists = [[e.degree for e in level] for level in self.levels]
        return FreeComplex(self.ring, twists, maps)

    def degree_zero_map(self, i, d):
        """Degree-0 strand C_i(d) -> C_{i-1}(d) as (row indices, col indices, matrix of coefficients)."""
        rows = [e for e in self.levels[i - 1] if e.degree == d]
        cols = [e for e in self.levels[i] if e.degree == d]
        cops = self.ring.cops
        pos = {e.index: r for r, e in enumerate(rows)}
        M = [[cops.zero for _ in cols] for _ in rows]
        for c, e in enumerate(cols):
            for (t, pth), coef in e.vector.items():
                idx = pth[-1] if pth else 0
                if idx in pos and t == self.levels[i - 1][idx].total:
                    M[pos[idx]][c] = coef
        return [e.index for e in rows], [e.index for e in cols], M

    def nonminimal_maps(self):
        out = {}
        for i in range(2, len(self.levels)):
            degs = {e.degree for e in self.levels[i]} & {e.degree for e in self.levels[i - 1]}
            for d in sorted(degs):
                _, _, M = self.degree_zero_map(i, d)
                out[(i, d)] = M
        return NonminimalMaps(self.ring.coeff_ring, out)


class NonminimalMaps:
    """(homological degree, internal degree) -> matrix over the coefficient ring."""

    def __init__(self, coeff_ring, maps):
        self.coeff_ring = coeff_ring
        self.maps = maps

    def keys(self):
        return sorted(self.maps)

    def __getitem__(self, key):
        return self.maps[key]

    def __contains__(self, key):
        return key in self.maps

    def shape(self, key):
        M = self.maps[key]
        return (len(M), len(M[0]) if M else 0)

    def as_polys(self, key):
        ring = self.coeff_ring
        if ring is None:
            return [list(r) for r in self.maps[key]]
        return [[Poly(ring, c) for c in row] for row in self.maps[key]]

    def evaluate(self, key, point):
        """Matrix over GF(p) at a parameter point."""
        ring = self.coeff_ring
        M = self.maps[key]
        if ring is None:
            return np.array(M, dtype=np.int64).reshape(len(M), len(M[0]) if M else 0)
        out = np.zeros(self.shape(key), dtype=np.int64)
        for r, row in enumerate(M):
            for c, coef in enumerate(row):
                if coef:
                    out[r, c] = Poly(ring, coef).evaluate(point)
        return out

    def ranks_at(self, point):
        p = self.coeff_ring.p if self.coeff_ring is not None else None
        return {k: mat_rank(self.evaluate(k, point), p) for k in self.keys()}


def schreyer_resolution(ring, level1, coef_reduce=None, max_level=None):
    """Schreyer resolution over ``ring`` starting from monic generators.

    ``level1`` is a list of raw term dicts (a Groebner basis, or a Groebner
    family whose leads are monic in x).  ``coef_reduce`` normalizes
    coefficients (e.g. modulo a stratum ideal); terms that cannot be reduced
    are set aside in ``leftovers`` keyed by level.
    """
    codec = ring.codec
    K = codec.K
    cops = ring.cops
    field = ring.is_field_coeffs
    p = ring.p
    pm, guard = codec.plain_mask, codec.guard
    by_lead = {max(g): g for g in level1}
    levels = frame_levels(list(by_lead), ring, max_level)
    for e in levels[1]:
        e.vector = {(m, ()): c for m, c in by_lead[e.total].items()}
    leftovers = {}
    for k in range(2, len(levels)):
        prev = levels[k - 1]
        by_comp = {}
        for e in prev:
            by_comp.setdefault(e.comp, []).append(e)
        for s in levels[k]:
            base = prev[s.comp]
            shift = s.total - base.total
            v = {(t + shift, pth): c for (t, pth), c in base.vector.items()}
            syz = {(s.total, base.path): cops.one}
            rest = {}
            first = True
            while v:
                key = max(v)
                t, pth = key
                tp = (t & pm) | guard
                hit = None
                for cand in by_comp.get(pth[-1] if pth else 0, ()):
                    if first and cand.index == base.index:
                        continue
                    if (tp - (cand.total & pm)) & guard == guard:
                        hit = cand
                        break
                c = v.pop(key)
                if hit is None:
                    rest[key] = c
                    continue
                first = False
                sh = t - hit.total
                for (tt, hp), gc in hit.vector.items():
                    kk = (tt + sh, hp)
                    if kk == key:
                        continue
                    if field:
                        val = (v.get(kk, 0) - c * gc) % p
                    else:
                        prod = cops.mul(c, gc)
                        val = cops.sub(v[kk], prod) if kk in v else cops.neg(prod)
                    if val:
                        v[kk] = val
                    else:
                        v.pop(kk, None)
                qk = (t, hit.path)
                syz[qk] = cops.neg(c) if qk not in syz else cops.sub(syz[qk], c)
            if coef_reduce is not None:
                syz = {kk: r for kk, r in ((kk, coef_reduce(c)) for kk, c in syz.items()) if r}
                rest = {kk: r for kk, r in ((kk, coef_reduce(c)) for kk, c in rest.items()) if r}
            if rest:
                leftovers.setdefault(k, []).append((s.index, rest))
            s.vector = syz
    return SchreyerResolution(ring, levels, leftovers)


class FreeComplex:
    """Graded free complex: twists per level and differentials as Poly matrices."""

    def __init__(self, ring, twists, maps):
        self.ring = ring
        self.twists = twists
        self.maps = maps

    def ranks(self):
        return [len(t) for t in self.twists]

    def betti(self):
        out = {}
        for i, tw in enumerate(self.twists):
            for d in tw:
                out[(i, d)] = out.get((i, d), 0) + 1
        return BettiTable(out, self.ring.n)

    def differential(self, k):
        return self.maps[k - 1]

    def composes_to_zero(self, reduce=None):
        for k in range(1, len(self.maps)):
            A, B = self.maps[k - 1], self.maps[k]
            for r in range(len(A)):
                for c in range(len(B[0]) if B else 0):
                    acc = self.ring.zero()
                    for m in range(len(B)):
                        if A[r][m] and B[m][c]:
                            acc = acc + A[r][m] * B[m][c]
                    if reduce is not None:
                        acc = reduce(acc)
                    if acc:
                        return False
        return True

    def is_graded(self):
        for k, M in enumerate(self.maps, start=1):
            for r, row in enumerate(M):
                for c, f in enumerate(row):
                    if f and f.degrees_set() != {self.twists[k][c] - self.twists[k - 1][r]}:
                        return False
        return True


def _prune(twists, maps, ring):
    """Cancel unit entries, lowest internal degree first."""
    p = ring.p
    K = ring.codec.K
    one = ring.codec.one
    twists = [list(t) for t in twists]
    maps = [[list(r) for r in M] for M in maps]
    while True:
        best = None
        for k, M in enumerate(maps):
            for r, row in enumerate(M):
                for c, f in enumerate(row):
                    if f and len(f.terms) == 1 and one in f.terms:
                        d = twists[k + 1][c]
                        if best is None or d < best[0]:
                            best = (d, k, r, c)
        if best is None:
            return twists, maps
        _, k, r, c = best
        M = maps[k]
        u = M[r][c].terms[one]
        inv = pow(u, p - 2, p)
        col = [M[i][c] for i in range(len(M))]
        rowv = M[r]
        new = []
        for i in range(len(M)):
            if i == r:
                continue
            nrow = []
            for j in range(len(rowv)):
                if j == c:
                    continue
                f = M[i][j]
                if col[i] and rowv[j]:
                    f = f - (col[i] * rowv[j]).scale(inv)
                nrow.append(f)
            new.append(nrow)
        maps[k] = new
        if k > 0:
            maps[k - 1] = [[f for j, f in enumerate(row) if j != r] for row in maps[k - 1]]
        if k + 1 < len(maps):
            maps[k + 1] = [row for i, row in enumerate(maps[k + 1]) if i != c]
        del twists[k][r]
        del twists[k + 1][c]


def minimal_resolution(I):
    """Minimal graded free resolution of S/I (Schreyer, then pruning)."""
    gb = I.gb() if isinstance(I, Ideal) else I
    ring = gb.ring
    if not gb._raw:
        return FreeComplex(ring, [[0]], [])
    res = schreyer_resolution(ring, gb._raw)
    C = res.complex()
    twists, maps = _prune(C.twists, C.maps, ring)
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        maps.pop()
    return FreeComplex(ring, twists, maps)


def second_syzygy_rank(C):
    """Dimension of the span of the linear entries of the last differential."""
    b = C.betti()
    if b != BettiTable.from_rows([[1], [0, 4, 4, 1]]):
        raise WrongShape(f"expected Betti table 1;-,4,4,1 got {b.compact()}")
    M = C.maps[-1]
    ring = C.ring
    vecs = []
    for row in M:
        for f in row:
            if f:
                vecs.append([f.coefficient(tuple(int(i == v) for i in range(ring.n))) for v in range(ring.n)])
    if not vecs:
        return 0
    return mat_rank(np.array(vecs, dtype=np.int64), ring.p)


def minimal_betti_from_ranks(profile, ranks, nvars=4):
    """b[i,d] = #C_i(d) - rank phi_{i,d} - rank phi_{i+1,d}.

    ``profile`` maps (i, d) to the number of degree-d twists of C_i and
    ``ranks`` maps (i, d) to the rank of the degree-0 map C_i(d) -> C_{i-1}(d).
    """
    if isinstance(profile, BettiTable):
        profile = profile.entries
    for (i, d), r in ranks.items():
        lim = min(profile.get((i, d), 0), profile.get((i - 1, d), 0))
        if r < 0 or r > lim:
            raise InconsistentRanks(f"rank {r} at {(i, d)} exceeds {lim}")
    entries = {}
    for (i, d), c in profile.items():
        b = c - ranks.get((i, d), 0) - ranks.get((i + 1, d), 0)
        if b < 0:
            raise InconsistentRanks(f"negative Betti number at {(i, d)}")
        if b:
            entries[(i, d)] = b
    return BettiTable(entries, nvars)


def double_betti(B, c, n, gamma):
    """Betti table of a doubling: b[i,j] + b[c+1-i, n+1+gamma-j].

    Sets ``flags['below_threshold']`` when gamma < 2 reg + c - n, in which
    case cancellation in the mapping cone is possible.
    """
    shift = n + 1 + gamma
    entries = {}
    keys = set(B.entries) | {(c + 1 - i, shift - j) for i, j in B.entries}
    for i, j in keys:
        v = B[(i, j)] + B[(c + 1 - i, shift - j)]
        if v:
            entries[(i, j)] = v
    out = BettiTable(entries, B.nvars)
    out.flags["below_threshold"] = gamma < 2 * B.regularity() + c - n
    return out


def generators_from_pieces(pieces, ring):
    """Minimal generators of a graded ideal from bases of its graded pieces.

    ``pieces[k]`` is an array whose rows span I_k over the degree-k monomials
    (lex-descending).  A degree-k generator is a vector of I_k outside
    S_1 * I_{k-1}.
    """
    p = ring.p
    n = ring.n
    gens = []
    for k in sorted(pieces):
        mons = monomials_of_degree(n, k)
        cur = np.asarray(pieces[k], dtype=np.int64).reshape(-1, len(mons)) % p
        if not cur.shape[0]:
            continue
        index = {m: i for i, m in enumerate(mons)}
        span = []
        prev = pieces.get(k - 1)
        if prev is not None and k >= 1:
            pmons = monomials_of_degree(n, k - 1)
            for row in np.asarray(prev, dtype=np.int64).reshape(-1, len(pmons)):
                for v in range(n):
                    w = np.zeros(len(mons), dtype=np.int64)
                    for m, c in zip(pmons, row):
                        if c:
                            e = list(m)
                            e[v] += 1
                            w[index[tuple(e)]] = c
                    span.append(w)
        basis = row_space(np.array(span), p) if span else np.zeros((0, len(mons)), dtype=np.int64)
        r = basis.shape[0]
        for row in cur:
            trial = np.vstack([basis, row[None, :]])
            if mat_rank(trial, p) > r:
                basis = trial
                r += 1
                gens.append(ring.from_terms([(m, int(c)) for m, c in zip(mons, row) if c]))
    return gens
