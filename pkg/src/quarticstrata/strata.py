"""Strongly stable ideals, generic initial ideals, Groebner families and strata."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._util import parallel_map
from .errors import InitialIdealMismatch, NotPrime, UnstableGin
from .gfp import DEFAULT_PRIME, mat_rank
from .groebner import (Ideal, MonomialIdeal, _spoly, buchberger, krull_dim,
                       minimalize, reduce_generic)
from .poly import (GREVLEX, Poly, PolyRing, TermOrder, apply_linear_change,
                   monomials_of_degree)
from .resolution import BettiTable, betti_table, schreyer_resolution


def _var_names(n):
    return [f"x{i}" for i in range(n)]


def check_strata_prime(p):
    """Borel-fixed and strongly stable agree only in large characteristic."""
    if p <= 100:
        raise NotPrime(f"strata computations need p > 100, got {p}")
    return p


# strongly stable ideals

def is_strongly_stable(J):
    """Exchange condition x_i m in J => x_j m in J (j < i), checked on generators."""
    for g in J.gens:
        for i, e in enumerate(g):
            if not e:
                continue
            for j in range(i):
                m = list(g)
                m[i] -= 1
                m[j] += 1
                if not J.contains(tuple(m)):
                    return False
    return True


def _borel_up(m):
    """Monomials obtained from m by one exchange x_j -> x_i with i > j."""
    n = len(m)
    for j in range(n):
        if m[j]:
            for i in range(j + 1, n):
                e = list(m)
                e[j] -= 1
                e[i] += 1
                yield tuple(e)


def _divisors_down(m):
    for k, e in enumerate(m):
        if e:
            d = list(m)
            d[k] -= 1
            yield tuple(d)


def _can_add(N, m):
    return all(d in N for d in _divisors_down(m)) and all(u in N for u in _borel_up(m))


def _borel_order_ideals(d, k):
    """All sets of d monomials in k variables closed under division and the
    exchanges x_j -> x_i (i > j); these are complements of strongly stable ideals."""
    one = (0,) * k
    layer = {frozenset([one])}
    for _ in range(d - 1):
        nxt = set()
        for N in layer:
            cands = set()
            for m in N:
                for v in range(k):
                    e = list(m)
                    e[v] += 1
                    e = tuple(e)
                    if e not in N:
                        cands.add(e)
            for c in cands:
                if _can_add(N, c):
                    nxt.add(N | {c})
        layer = nxt
    return layer


def _complement_generators(N, k):
    """Minimal generators of the monomial ideal whose standard set is N."""
    out = set()
    for m in N:
        for v in range(k):
            e = list(m)
            e[v] += 1
            e = tuple(e)
            if e not in N and all(dd in N for dd in _divisors_down(e)):
                out.add(e)
    if not N:
        out.add((0,) * k)
    return minimalize(out)


def enumerate_strongly_stable(d, n=4):
    """Saturated strongly stable ideals of k[x_0..x_{n-1}] with Hilbert polynomial d.

    A saturated Borel-fixed ideal is extended from an Artinian one in the
    first n-1 variables, so these correspond to the Borel order ideals of
    size d in n-1 variables.
    """
    if d < 1:
        raise ValueError("length must be positive")
    k = n - 1
    out = []
    for N in _borel_order_ideals(d, k):
        gens = [g + (0,) for g in _complement_generators(N, k)]
        out.append(MonomialIdeal(n, gens))
    out.sort(key=lambda J: (len(J.gens), J.max_degree(), sorted(J.gens)))
    return out


def is_saturated_monomial(J):
    """For strongly stable J saturation is with respect to the last variable."""
    return J.quotient(tuple(int(i == J.n - 1) for i in range(J.n))) == J


def regularity(J, ring=None):
    """reg(S/J) from the Betti table."""
    ring = ring or PolyRing(_var_names(J.n))
    return betti_table(J.to_ideal(ring)).regularity()


def has_linear_generator(J):
    return any(sum(g) == 1 for g in J.gens)


# generic initial ideals

def random_gl(n, p, rng):
    while True:
        g = rng.integers(0, p, size=(n, n)).tolist()
        if mat_rank(np.array(g, dtype=np.int64), p) == n:
            return g


def change_coordinates(I, g):
    ring = I.ring
    return Ideal(ring, [apply_linear_change(f, g) for f in I.gens])


def gin(I, seed=0, trials=3):
    """Grevlex lead ideal after random coordinate changes; trials must agree."""
    ring = I.ring
    check_strata_prime(ring.p)
    if ring.order != GREVLEX:
        ring = ring.with_order(GREVLEX)
        I = Ideal(ring, [ring.convert(f) for f in I.gens])
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(trials):
        g = random_gl(ring.n, ring.p, rng)
        results.append(change_coordinates(I, g).lead_ideal())
    first = results[0]
    if any(r != first for r in results[1:]):
        raise UnstableGin("random coordinate changes gave different initial ideals")
    if not is_strongly_stable(first):
        raise UnstableGin("initial ideal is not strongly stable; try a larger prime")
    return first


# Groebner families

def grevlex_weights(n, D):
    """Integer weights realizing grevlex on monomials of degree <= D."""
    B = D + 1
    c = B ** (n - 2) + 1
    return [c] + [c - B ** (i - 1) for i in range(1, n)]


@dataclass
class GroebnerFamily:
    J: MonomialIdeal
    T: PolyRing
    U: PolyRing
    weights: list
    params: list
    leads: list
    generators: list = field(default_factory=list)

    @property
    def nparams(self):
        return len(self.params)

    def param_names(self):
        return list(self.T.names)

    def param_weights(self):
        return [w for _, _, w in self.params]

    def to_json(self):
        return {
            "params": [{"name": nm, "weight": w, "lead": list(a), "tail": list(g)}
                       for nm, (a, g, w) in zip(self.T.names, self.params)],
            "generators": [f.to_text() for f in self.generators],
        }

    def zero_point(self):
        return [0] * self.nparams


def groebner_family(J, p=DEFAULT_PRIME, names=None):
    """F_alpha = x^alpha + sum t_{alpha,gamma} x^gamma over standard gamma < alpha."""
    check_strata_prime(p)
    n = J.n
    names = names or _var_names(n)
    D = max(J.max_degree(), 1)
    w = grevlex_weights(n, D)
    leads = sorted(J.gens, key=lambda a: (sum(a), tuple(-x for x in GREVLEX.key(a))))
    params = []
    for a in leads:
        tails = [g for g in monomials_of_degree(n, sum(a))
                 if not J.contains(g) and GREVLEX.key(g) < GREVLEX.key(a)]
        tails.sort(key=GREVLEX.key, reverse=True)
        for g in tails:
            params.append((a, g, sum(wi * (x - y) for wi, x, y in zip(w, a, g))))
    m = len(params)
    wts = [q[2] for q in params]
    perm = sorted(range(m), key=lambda i: (-wts[i], i))
    if m:
        order = TermOrder("weighted", weights=wts, then="lex", perm=perm)
        T = PolyRing([f"t{i + 1}" for i in range(m)], order, p, degrees=wts)
    else:
        T = PolyRing(["t0"], GREVLEX, p)
    U = PolyRing(names, GREVLEX, p, coeff_ring=T)
    gens = []
    k = 0
    for a in leads:
        f = U.monomial(a)
        while k < m and params[k][0] == a:
            f = f + U.monomial(params[k][1], T.var(k).terms)
            k += 1
        gens.append(f)
    return GroebnerFamily(J, T, U, w, params, leads, gens)


class StratumIdeal:
    """The ideal L in T cutting out the Groebner stratum."""

    def __init__(self, fam, gens):
        self.family = fam
        self.ring = fam.T
        self.ideal = Ideal(fam.T, gens)
        self._dim = None

    @property
    def gens(self):
        return self.ideal.gens

    def gb(self):
        return self.ideal.gb()

    def dim(self):
        if self._dim is None:
            if self.family.nparams == 0:
                self._dim = 0
            else:
                self._dim = krull_dim(self.ideal)
        return self._dim

    def reduce(self, coeff_terms):
        """Normal form of a raw T-coefficient modulo L."""
        if not self.ideal.gens:
            return coeff_terms
        return self.gb().reduce_raw(coeff_terms)

    def vanishes_at(self, point):
        return all(g.evaluate(point) == 0 for g in self.ideal.gens)

    def is_weight_homogeneous(self):
        return all(g.is_homogeneous() for g in self.ideal.gens)

    def to_json(self):
        return {"generators": [g.to_text() for g in self.gb().polys], "dim": self.dim()}


def groebner_stratum(fam):
    """Coefficients in T of the S-pair remainders of the family."""
    U = fam.U
    T = fam.T
    basis = [(max(f.terms), f.terms) for f in fam.generators]
    out = []
    for i, j in itertools.combinations(range(len(fam.generators)), 2):
        s = _spoly(fam.generators[i].terms, fam.generators[j].terms, U.codec, U)
        r = reduce_generic(s, basis, U.codec, U.cops)
        out.extend(Poly(T, c) for c in r.values() if c)
    return StratumIdeal(fam, out)


# resolutions over the family

def family_schreyer(fam, L):
    """Schreyer resolution of the family over U with coefficients reduced mod L."""
    return schreyer_resolution(fam.U, [f.terms for f in fam.generators], coef_reduce=L.reduce)


def schreyer_family_resolution(fam, L):
    """(FreeComplex over U, NonminimalMaps) for the Groebner family."""
    res = family_schreyer(fam, L)
    return res.complex(), res.nonminimal_maps()


def resolution_weight_homogeneous(res, fam):
    """Every term of every syzygy vector has the weight of its basis element."""
    U = fam.U
    T = fam.T
    w = fam.weights
    for level in res.levels[1:]:
        for e in level:
            target = sum(a * b for a, b in zip(w, U.codec.decode(e.total)))
            for (t, _), c in e.vector.items():
                base = sum(a * b for a, b in zip(w, U.codec.decode(t)))
                for tm in c:
                    if base + T.codec.degree(tm) != target:
                        return False
    return True


def complex_composes_mod(C, L):
    """d_k d_{k+1} = 0 over U with coefficients taken modulo L."""
    U = C.ring

    def red(f):
        return Poly(U, {m: r for m, r in ((m, L.reduce(c)) for m, c in f.terms.items()) if r})
    return C.composes_to_zero(red)


# rank loci

def _det(M, ring):
    k = len(M)
    if k == 1:
        return M[0][0]
    total = ring.zero()
    for j in range(k):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(k, M, ring):
    """Nonzero k x k minors of a matrix of polynomials (or raw coefficient dicts)."""
    rows = [[x if isinstance(x, Poly) else Poly(ring, x) for x in row] for row in M]
    if k <= 0:
        return [ring.one()]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    out = []
    for R in itertools.combinations(range(nr), k):
        for Cc in itertools.combinations(range(nc), k):
            d = _det([[rows[r][c] for c in Cc] for r in R], ring)
            if d:
                out.append(d)
    return out


def rank_locus_ideal(L, maps, target):
    """L plus the (r+1)-minors of phi_{i,d} for each target rank r."""
    T = L.ring
    keys = sorted(target)
    parts = parallel_map(lambda key: minors(target[key] + 1, maps.as_polys(key), T), keys)
    gens = list(L.gens)
    for part in parts:
        gens.extend(part)
    I = Ideal(T, gens)
    I.gb()
    return I


def minors_ideal(k, M, L):
    """Ideal of k x k minors of M taken together with L."""
    return Ideal(L.ring, list(L.gens) + minors(k, M, L.ring))


# points of the stratum

def specialize(fam, point):
    """Substitute t-values into the family; returns an ideal of S."""
    if isinstance(point, dict):
        point = [point.get(nm, 0) for nm in fam.T.names]
    point = [int(v) % fam.U.p for v in point]
    if fam.nparams == 0:
        point = [0]
    gens = [f.subs_coefficients(point) for f in fam.generators]
    return Ideal(gens[0].ring, gens)


def harvest_parameters(fam, I):
    """Parameter point of an ideal whose grevlex initial ideal is the family's J."""
    gb = I.gb(GREVLEX)
    lead = gb.lead_ideal()
    if lead != fam.J:
        raise InitialIdealMismatch(f"initial ideal {lead.gens} differs from {fam.J.gens}")
    by_lead = {}
    for f in gb.polys:
        by_lead[f.lead_monomial()] = f
    point = []
    for a, g, _ in fam.params:
        point.append(by_lead[a].coefficient(g))
    return point


def harvest_generic(fam, I, seed=0, attempts=8):
    """Random coordinate changes until the initial ideal is J, then harvest."""
    rng = np.random.default_rng(seed)
    ring = I.ring
    for _ in range(attempts):
        g = random_gl(ring.n, ring.p, rng)
        Ig = change_coordinates(I, g)
        try:
            return harvest_parameters(fam, Ig), Ig
        except InitialIdealMismatch:
            continue
    raise InitialIdealMismatch("no coordinate change produced the expected initial ideal")


def betti_at(fam, maps, profile, point):
    """Minimal Betti table at a parameter point from the ranks of the nonminimal maps."""
    from .resolution import minimal_betti_from_ranks
    ranks = maps.ranks_at(point)
    return minimal_betti_from_ranks(profile, ranks, fam.J.n)


__all__ = [
    "BettiTable", "GroebnerFamily", "StratumIdeal", "betti_at", "change_coordinates",
    "check_strata_prime",
    "complex_composes_mod", "enumerate_strongly_stable", "family_schreyer", "gin",
    "grevlex_weights", "groebner_family", "groebner_stratum", "harvest_generic",
    "harvest_parameters", "has_linear_generator", "is_saturated_monomial",
    "is_strongly_stable", "minors", "minors_ideal", "random_gl", "rank_locus_ideal",
    "regularity", "resolution_weight_homogeneous", "schreyer_family_resolution",
    "specialize",
]
