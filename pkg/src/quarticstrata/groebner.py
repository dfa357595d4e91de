"""Buchberger's algorithm, normal forms, monomial ideals and Hilbert series."""

import heapq
import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import NonUnitLeadCoefficient, ZeroDivisorInput
from .poly import GREVLEX, Poly, PolyRing, TermOrder, monomials_of_degree


# reduction kernels on raw term dicts

def _find_divisor(m, basis, pm, g):
    mp = (m & pm) | g
    for lm, poly in basis:
        if (mp - (lm & pm)) & g == g:
            return lm, poly
    return None


def reduce_gf(f, basis, codec, p, full=True):
    """Reduce ``f`` by monic ``basis`` = [(lead code, terms)] over GF(p)."""
    pm, g = codec.plain_mask, codec.guard
    f = dict(f)
    heap = [-m for m in f]
    heapq.heapify(heap)
    rem = {}
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        m = -pop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        hit = _find_divisor(m, basis, pm, g)
        if hit is None:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        lm, poly = hit
        shift = m - lm
        get = f.get
        for t, gc in poly.items():
            if t == lm:
                continue
            k = t + shift
            old = get(k, 0)
            v = (old - c * gc) % p
            if v:
                f[k] = v
                if not old:
                    push(heap, -k)
            elif old:
                del f[k]
    return rem


def reduce_generic(f, basis, codec, cops, full=True):
    """Reduction over an arbitrary coefficient ring; basis leads must be 1."""
    pm, g = codec.plain_mask, codec.guard
    f = dict(f)
    rem = {}
    while f:
        m = max(f)
        hit = _find_divisor(m, basis, pm, g)
        if hit is None:
            if not full:
                rem.update(f)
                return rem
            rem[m] = f.pop(m)
            continue
        c = f.pop(m)
        lm, poly = hit
        shift = m - lm
        for t, gc in poly.items():
            if t == lm:
                continue
            k = t + shift
            v = cops.sub(f[k], cops.mul(c, gc)) if k in f else cops.neg(cops.mul(c, gc))
            if v:
                f[k] = v
            else:
                f.pop(k, None)
    return rem


def _monic(terms, cops):
    lm = max(terms)
    c = terms[lm]
    if isinstance(c, int):
        if c == 1:
            return terms
        inv = pow(c, cops.p - 2, cops.p)
        p = cops.p
        return {m: v * inv % p for m, v in terms.items()}
    if not cops.is_unit(c):
        raise NonUnitLeadCoefficient("lead coefficient is not a unit")
    inv = cops.inv(c)
    return {m: cops.mul(v, inv) for m, v in terms.items()}


def _spoly(a, b, codec, ring):
    la, lb = max(a), max(b)
    lcm = codec.lcm(la, lb)
    sa, sb = lcm - la, lcm - lb
    cops = ring.cops
    if ring.is_field_coeffs:
        p = ring.p
        out = {m + sa: c for m, c in a.items() if m != la}
        for m, c in b.items():
            if m == lb:
                continue
            k = m + sb
            v = (out.get(k, 0) - c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out
    out = {m + sa: c for m, c in a.items() if m != la}
    for m, c in b.items():
        if m == lb:
            continue
        k = m + sb
        v = cops.sub(out[k], c) if k in out else cops.neg(c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _reduce(f, basis, ring, full=True):
    if ring.is_field_coeffs:
        return reduce_gf(f, basis, ring.codec, ring.p, full)
    return reduce_generic(f, basis, ring.codec, ring.cops, full)


def buchberger_raw(polys, ring, stats=None, degree_hook=None):
    """Reduced Groebner basis of raw term dicts in ``ring``; returns sorted dicts.

    ``degree_hook(leads)`` is called with the current lead codes each time the
    pair degree increases; a true return value stops the computation early and
    the partial (not interreduced) basis is returned with ``stats["complete"]``
    set to False.
    """
    codec = ring.codec
    cops = ring.cops
    deg = codec.degree
    G = []            # all elements (monic dicts)
    leads = []
    active = []       # indices currently in the basis
    pairs = {}
    heap = []
    counter = itertools.count()

    def add(h):
        nonlocal active
        hl = max(h)
        idx = len(G)
        G.append(h)
        leads.append(hl)
        # Gebauer-Moeller update
        cand = [(g, codec.lcm(leads[g], hl)) for g in active]
        keep = []
        for k, (g1, l1) in enumerate(cand):
            if codec.coprime(leads[g1], hl):
                keep.append((g1, l1, True))
                continue
            redundant = False
            for j, (g2, l2) in enumerate(cand):
                if j == k:
                    continue
                if codec.divides(l2, l1) and (l2 != l1 or j < k):
                    redundant = True
                    break
            if not redundant:
                keep.append((g1, l1, False))
        for key in list(pairs):
            a, b = key
            l = pairs[key]
            if codec.divides(hl, l) and codec.lcm(leads[a], hl) != l and codec.lcm(leads[b], hl) != l:
                del pairs[key]
        for g1, l1, cop in keep:
            if cop:
                continue
            pairs[(g1, idx)] = l1
            heapq.heappush(heap, (deg(l1), l1, next(counter), (g1, idx)))
        active = [g for g in active if not codec.divides(hl, leads[g])] + [idx]

    start = []
    for f in polys:
        if f:
            start.append(f)
    start.sort(key=lambda f: (deg(max(f)), max(f)))
    for f in start:
        basis = [(leads[i], G[i]) for i in active]
        r = _reduce(f, basis, ring)
        if r:
            add(_monic(r, cops))
    current = None
    while heap:
        d, l, _, key = heapq.heappop(heap)
        if pairs.pop(key, None) is None:
            continue
        if degree_hook is not None and d != current:
            current = d
            if degree_hook([leads[i] for i in active]):
                if stats is not None:
                    stats["complete"] = False
                    stats["stop_degree"] = d
                return [G[i] for i in active]
        a, b = key
        s = _spoly(G[a], G[b], codec, ring)
        if stats is not None:
            stats["pairs"] = stats.get("pairs", 0) + 1
        if not s:
            continue
        basis = sorted(((leads[i], G[i]) for i in active), key=lambda e: len(e[1]))
        r = _reduce(s, basis, ring)
        if r:
            add(_monic(r, cops))
    if stats is not None:
        stats["complete"] = True
    return interreduce([G[i] for i in active], ring)


def interreduce(polys, ring):
    """Minimalize and tail-reduce a Groebner basis."""
    codec = ring.codec
    polys = [p for p in polys if p]
    polys.sort(key=max)
    minimal = []
    for f in polys:
        lf = max(f)
        if any(codec.divides(max(g), lf) for g in minimal):
            continue
        minimal = [g for g in minimal if not codec.divides(lf, max(g))]
        minimal.append(f)
    out = []
    for i, f in enumerate(minimal):
        others = [(max(g), g) for j, g in enumerate(minimal) if j != i]
        lf = max(f)
        tail = {m: c for m, c in f.items() if m != lf}
        r = _reduce(tail, others, ring)
        r[lf] = f[lf]
        out.append(_monic(r, ring.cops))
    out.sort(key=max)
    return out


# public types

class GroebnerBasis:
    """Reduced Groebner basis of an ideal for the order of ``ring``."""

    def __init__(self, ring, terms_list):
        self.ring = ring
        self._raw = terms_list
        self.polys = [Poly(ring, t) for t in terms_list]
        self._basis = [(max(t), t) for t in terms_list]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def lead_monomials(self):
        return [f.lead_monomial() for f in self.polys]

    def lead_ideal(self):
        return MonomialIdeal(self.ring.n, self.lead_monomials())

    def reduce_raw(self, terms, full=True):
        return _reduce(terms, self._basis, self.ring, full)

    def normal_form(self, f):
        return Poly(self.ring, self.reduce_raw(self.ring.convert(f).terms))

    def contains(self, f):
        return not self.reduce_raw(self.ring.convert(f).terms)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self._raw == other._raw

    def is_unit_ideal(self):
        return any(max(t) == self.ring.codec.one for t in self._raw)


def buchberger(gens, order=None, stats=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to know the ring")
    ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    raw = [ring.convert(g).terms for g in gens]
    return GroebnerBasis(ring, buchberger_raw(raw, ring, stats))


def normal_form(f, gb):
    return gb.normal_form(f)


def check_s_pairs(gb):
    """Buchberger criterion check: every S-pair reduces to zero."""
    ring = gb.ring
    for a, b in itertools.combinations(gb._raw, 2):
        s = _spoly(a, b, ring.codec, ring)
        if s and gb.reduce_raw(s):
            return False
    return True


class Ideal:
    """Ideal given by generators; Groebner bases are cached per order."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [ring.convert(g) for g in gens if g]
        self._gb = {}

    def __repr__(self):
        return f"Ideal({[g.to_text() for g in self.gens]})"

    def gb(self, order=None):
        order = order or self.ring.order
        if order not in self._gb:
            if not self.gens:
                self._gb[order] = GroebnerBasis(self.ring.with_order(order), [])
            else:
                self._gb[order] = buchberger(self.gens, order)
        return self._gb[order]

    def lead_ideal(self, order=None):
        return self.gb(order).lead_ideal()

    def contains(self, f):
        return self.gb().contains(f)

    def normal_form(self, f):
        return self.gb().normal_form(f)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def hilbert(self):
        return hilbert(self)

    def is_zero(self):
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideals_equal(self, other)

    def __add__(self, other):
        return Ideal(self.ring, self.gens + [self.ring.convert(g) for g in other.gens])

    def minimal_generators(self):
        """Minimal homogeneous generators (graded ideals)."""
        gens = sorted(self.gens, key=lambda g: (g.degree(), g.lead_code()))
        accepted = []
        gb = None
        for g in gens:
            if gb is not None and gb.contains(g):
                continue
            accepted.append(gb.normal_form(g) if gb is not None else g)
            gb = buchberger(accepted)
        return Ideal(self.ring, accepted)

    def degree_part(self, d):
        """Basis of I_d as rows of a coefficient matrix over monomials of degree d."""
        from .resolution import graded_piece_basis
        return graded_piece_basis(self, d)


def ideals_equal(I, J):
    a, b = I.gb(), J.gb(I.ring.order)
    return a._raw == b._raw


def ideal_contains(I, J):
    """True when every generator of J lies in I."""
    gb = I.gb()
    return all(gb.contains(g) for g in J.gens)


# monomial ideals

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens):
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


class MonomialIdeal:
    """Monomial ideal with mutually indivisible generators."""

    def __init__(self, n, gens):
        self.n = n
        self.gens = minimalize(gens)

    def __repr__(self):
        return f"MonomialIdeal({self.gens})"

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.n, frozenset(self.gens)))

    def contains(self, m):
        return any(_divides(g, m) for g in self.gens)

    def standard_monomials(self, d):
        return [m for m in monomials_of_degree(self.n, d) if not self.contains(m)]

    def max_degree(self):
        return max((sum(g) for g in self.gens), default=0)

    def quotient(self, m):
        return MonomialIdeal(self.n, [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in self.gens])

    def add(self, more):
        return MonomialIdeal(self.n, list(self.gens) + list(more))

    def hilbert_numerator(self):
        return hilbert_numerator(self.gens, self.n)

    def krull_dim(self):
        return monomial_krull_dim(self.gens, self.n)

    def to_polys(self, ring):
        return [ring.monomial(g) for g in self.gens]

    def to_ideal(self, ring):
        return Ideal(ring, self.to_polys(ring))


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def hilbert_numerator(gens, n):
    """K-polynomial of S/(gens) (integer coefficient list) by pivot recursion."""
    gens = minimalize(gens)
    if not gens:
        return [1]
    if all(sum(1 for e in g if e) == 1 for g in gens) or _pairwise_coprime(gens):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    counts = [0] * n
    for g in gens:
        if sum(g) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    pivot = tuple(int(i == v) for i in range(n))
    plus = hilbert_numerator(gens + [pivot], n)
    colon = hilbert_numerator([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens], n)
    return _poly_add(plus, [0] + colon)


def _pairwise_coprime(gens):
    for a, b in itertools.combinations(gens, 2):
        if any(x and y for x, y in zip(a, b)):
            return False
    return True


def monomial_krull_dim(gens, n):
    """n minus the smallest set of variables meeting every generator's support."""
    supports = minimalize_sets([frozenset(i for i, e in enumerate(g) if e) for g in gens])
    if any(not s for s in supports):
        return -1
    best = [len(set().union(*supports))] if supports else [0]

    def search(remaining, chosen):
        if len(chosen) >= best[0]:
            return
        open_sets = [s for s in remaining if not (s & chosen)]
        if not open_sets:
            best[0] = len(chosen)
            return
        pick = min(open_sets, key=len)
        for v in sorted(pick):
            search(open_sets, chosen | {v})

    search(supports, frozenset())
    return n - best[0]


def minimalize_sets(sets):
    sets = sorted(set(sets), key=len)
    out = []
    for s in sets:
        if not any(t <= s for t in out):
            out.append(s)
    return out


@dataclass
class HilbertData:
    numerator: list
    nvars: int
    dim: int
    degree: int
    reduced_numerator: list = field(default_factory=list)

    def hf(self, d):
        """Hilbert function value in degree d."""
        total = 0
        for k, c in enumerate(self.numerator):
            if c and d - k >= 0:
                total += c * comb(d - k + self.nvars - 1, self.nvars - 1)
        return total

    def values(self, upto):
        return [self.hf(d) for d in range(upto + 1)]

    def hilbert_polynomial_value(self, d):
        total = 0
        k = self.dim
        if k <= 0:
            return 0
        for i, c in enumerate(self.reduced_numerator):
            total += c * _binom_poly(d - i + k - 1, k - 1)
        return total


def _binom_poly(x, k):
    num = 1
    for j in range(k):
        num *= x - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return num // den


def hilbert_from_numerator(num, n):
    num = list(num)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    q = num[:]
    cancelled = 0
    while any(q) and sum(q) == 0:
        # divide by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        cancelled += 1
    if not any(q):
        return HilbertData(num, n, -1, 0, [])
    return HilbertData(num, n, n - cancelled, sum(q), q)


def hilbert(I):
    """Hilbert data of S/I via the lead-term ideal."""
    if isinstance(I, MonomialIdeal):
        return hilbert_from_numerator(I.hilbert_numerator(), I.n)
    if I.is_zero():
        return hilbert_from_numerator([1], I.ring.n)
    lead = I.lead_ideal()
    return hilbert_from_numerator(lead.hilbert_numerator(), I.ring.n)


def krull_dim(I):
    if I.is_zero():
        return I.ring.n
    return I.lead_ideal().krull_dim()


def krull_dim_with_floor(I, floor, stats=None):
    """Krull dimension of I when dim I >= ``floor`` is known independently.

    Lead terms of a partial Groebner basis lie in in(I), so their monomial
    ideal bounds dim I from above.  Buchberger stops as soon as that bound
    reaches ``floor``; otherwise the complete basis decides.
    """
    ring = I.ring
    if I.is_zero():
        return ring.n
    dec = ring.codec.decode
    seen = {}

    def hook(leads):
        key = frozenset(leads)
        if key not in seen:
            seen[key] = monomial_krull_dim(minimalize(dec(c) for c in leads), ring.n)
        return seen[key] <= floor

    stats = {} if stats is None else stats
    raw = buchberger_raw([g.terms for g in I.gens], ring, stats, hook)
    d = monomial_krull_dim(minimalize(dec(max(f)) for f in raw), ring.n)
    if d < floor:
        raise ValueError(f"dimension {d} contradicts the claimed lower bound {floor}")
    return d


# colon, saturation, elimination

def _extended_ring(ring, extra, first=True):
    names = [extra] + list(ring.names) if first else list(ring.names) + [extra]
    return names


def exact_divide(f, g):
    """Return q with f = q*g, raising if the division is not exact."""
    ring = f.ring
    gt = g.terms
    lg = max(gt)
    inv = pow(gt[lg], ring.p - 2, ring.p)
    p = ring.p
    rem = dict(f.terms)
    q = {}
    K = ring.codec.K
    while rem:
        m = max(rem)
        if not ring.codec.divides(lg, m):
            raise ValueError("division is not exact")
        c = rem[m] * inv % p
        shift = m - lg
        q[shift + K] = c
        for t, gc in gt.items():
            k = t + shift
            v = (rem.get(k, 0) - c * gc) % p
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly(ring, q)


def intersect(I, J):
    """I cap J by eliminating an auxiliary variable."""
    ring = I.ring
    aux = PolyRing(["_u"] + list(ring.names), TermOrder("block", block=1), ring.p)
    embed = _embedder(ring, aux, 1)
    u = aux.var(0)
    gens = [u * embed(f) for f in I.gens] + [(aux.one() - u) * embed(f) for f in J.gens]
    gb = buchberger(gens)
    back = []
    for f in gb.polys:
        if all(e[0] == 0 for e in f.monomials()):
            back.append(_restrict(f, ring, 1))
    return Ideal(ring, back)


def _embedder(ring, big, offset):
    def embed(f):
        return big.from_terms([((0,) * offset + e, c) for e, c in f.items()])
    return embed


def _restrict(f, ring, offset):
    return ring.from_terms([(e[offset:], c) for e, c in f.items()])


def ideal_quotient(I, f):
    """(I : f) computed from I cap (f)."""
    if not f:
        raise ZeroDivisorInput("quotient by the zero polynomial")
    ring = I.ring
    f = ring.convert(f)
    if I.is_zero():
        return Ideal(ring, [])
    inter = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [exact_divide(g, f) for g in inter.gens])


def saturate(I, f):
    """(I : f^infinity), iterating the quotient until it stabilizes."""
    if not f:
        raise ZeroDivisorInput("saturation by the zero polynomial")
    cur = I
    while True:
        nxt = ideal_quotient(cur, f)
        if ideals_equal(nxt, cur):
            return Ideal(I.ring, nxt.gb().polys)
        cur = nxt


def eliminate(I, keep):
    """I intersected with the subring generated by the variables ``keep``."""
    ring = I.ring
    keep_idx = [ring.index(v) if isinstance(v, str) else v for v in keep]
    drop = [i for i in range(ring.n) if i not in keep_idx]
    perm = drop + sorted(keep_idx)
    big = PolyRing([ring.names[i] for i in perm], TermOrder("block", block=len(drop)), ring.p)

    def move(f):
        return big.from_terms([(tuple(e[i] for i in perm), c) for e, c in f.items()])

    gb = buchberger([move(g) for g in I.gens]) if I.gens else None
    out = []
    if gb is not None:
        nd = len(drop)
        for f in gb.polys:
            if all(not any(e[:nd]) for e in f.monomials()):
                terms = []
                for e, c in f.items():
                    orig = [0] * ring.n
                    for pos, i in enumerate(perm):
                        orig[i] = e[pos]
                    terms.append((tuple(orig), c))
                out.append(ring.from_terms(terms))
    return Ideal(ring, out)
