"""Monomials, term orders and sparse polynomials.

Monomials are exponent tuples at the API boundary.  Inside a ring they are
packed into single Python integers whose integer order is the term order:
several linear functionals of the exponent vector (the "rows" of the order)
are stacked above a block of plain 16-bit exponent fields.  Packing is affine
in the exponents, so multiplying monomials is ``a + b - K`` and divisibility
is a guard-bit test on the plain block.
"""

import ast
import itertools
import math
from functools import lru_cache

from .errors import DimensionMismatch, ParseError, SingularMatrix
from .gfp import DEFAULT_PRIME, check_prime, mat_rank

LT, EQ, GT = -1, 0, 1

_EXP_BITS = 16
_EXP_MAX = (1 << (_EXP_BITS - 1)) - 1
_DEG_BOUND = 1 << 12


def _grevlex_rows(idx, n):
    """Rows realizing grevlex on the variables ``idx`` (highest first)."""
    rows = []
    deg = [0] * n
    for i in idx:
        deg[i] = 1
    rows.append(tuple(deg))
    for k in range(len(idx) - 1, 0, -1):
        r = [0] * n
        for i in idx[:k]:
            r[i] = 1
        rows.append(tuple(r))
    return rows


class TermOrder:
    """A monomial order described by a stack of integer weight rows.

    kind is one of ``grevlex``, ``lex``, ``revlex``, ``weighted`` (a weight
    row refined by ``then``) or ``block`` (grevlex on the first ``block``
    variables, then grevlex on the rest).  ``perm`` lists variables from
    highest to lowest for the tie-breaking order.
    """

    def __init__(self, kind="grevlex", weights=None, then="grevlex", block=None, perm=None):
        if kind not in ("grevlex", "lex", "revlex", "weighted", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "weighted" and weights is None:
            raise ValueError("weighted order needs weights")
        if kind == "block" and block is None:
            raise ValueError("block order needs a block size")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None
        self.then = then
        self.block = block
        self.perm = tuple(perm) if perm is not None else None

    def _tie_rows(self, kind, n):
        idx = list(self.perm) if self.perm is not None else list(range(n))
        if kind == "grevlex":
            return _grevlex_rows(idx, n)
        if kind == "lex":
            return [tuple(int(j == i) for j in range(n)) for i in idx]
        if kind == "revlex":
            return [tuple(-int(j == i) for j in range(n)) for i in reversed(idx)]
        raise ValueError(f"unknown tie-break {kind!r}")

    @lru_cache(maxsize=None)
    def rows(self, n):
        if self.kind == "weighted":
            if len(self.weights) != n:
                raise DimensionMismatch("weight vector length")
            return [self.weights] + self._tie_rows(self.then, n)
        if self.kind == "block":
            k = self.block
            return _grevlex_rows(list(range(k)), n) + _grevlex_rows(list(range(k, n)), n)
        return self._tie_rows(self.kind, n)

    def key(self, exps):
        return tuple(sum(c * e for c, e in zip(r, exps)) for r in self.rows(len(exps)))

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def _ident(self):
        return (self.kind, self.weights, self.then, self.block, self.perm)

    def __repr__(self):
        extra = ""
        if self.weights is not None:
            extra += f", weights={list(self.weights)}, then={self.then!r}"
        if self.block is not None:
            extra += f", block={self.block}"
        if self.perm is not None:
            extra += f", perm={list(self.perm)}"
        return f"TermOrder({self.kind!r}{extra})"


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def compare(order, m1, m2):
    """Return LT, EQ or GT comparing exponent tuples under ``order``."""
    if len(m1) != len(m2):
        raise DimensionMismatch("monomials of different length")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


class MonomialCodec:
    """Packs exponent tuples into order-preserving integers."""

    def __init__(self, n, order, degrees):
        self.n = n
        rows = order.rows(n)
        self.shifts = [_EXP_BITS * (n - 1 - i) for i in range(n)]
        plain_bits = _EXP_BITS * n
        self.plain_mask = (1 << plain_bits) - 1
        self.guard = sum(1 << (s + _EXP_BITS - 1) for s in self.shifts)
        self.gshift = plain_bits
        gwidth = 40
        self.gmask = (1 << gwidth) - 1
        shift = plain_bits + gwidth
        units = [(1 << self.shifts[i]) + (degrees[i] << self.gshift) for i in range(n)]
        K = 0
        for r in reversed(rows):
            m = max(1, max(abs(c) for c in r))
            bound = m * _DEG_BOUND * max(1, max(degrees))
            off = bound if any(c < 0 for c in r) else 0
            width = (2 * bound + 1).bit_length() + 1
            K += off << shift
            for i, c in enumerate(r):
                units[i] += c << shift
            shift += width
        self.units = units
        self.K = K
        self.one = K

    def encode(self, exps):
        code = self.K
        for e, u in zip(exps, self.units):
            if e:
                if e > _EXP_MAX or e < 0:
                    raise ValueError("exponent out of range")
                code += e * u
        return code

    def decode(self, code):
        return tuple((code >> s) & 0xFFFF for s in self.shifts)

    def degree(self, code):
        return (code >> self.gshift) & self.gmask

    def divides(self, a, b):
        pm = self.plain_mask
        g = self.guard
        return (((b & pm) | g) - (a & pm)) & g == g

    def lcm(self, a, b):
        return self.encode(tuple(max(x, y) for x, y in zip(self.decode(a), self.decode(b))))

    def coprime(self, a, b):
        return all(x == 0 or y == 0 for x, y in zip(self.decode(a), self.decode(b)))


class GFOps:
    """Coefficient operations for GF(p)."""

    def __init__(self, p):
        self.p = p
        self.one = 1
        self.zero = 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def from_int(self, a):
        return a % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, self.p - 2, self.p)

    def is_constant(self, a):
        return True

    def constant_value(self, a):
        return a

    def text(self, a):
        return str(signed_rep(a, self.p))


class PolyOps:
    """Coefficient operations for a polynomial ring T (raw term dicts)."""

    def __init__(self, ring):
        self.ring = ring
        self.p = ring.p
        self.one = {ring.codec.one: 1}
        self.zero = {}

    def add(self, a, b):
        return dict_add(a, b, self.p)

    def sub(self, a, b):
        return dict_sub(a, b, self.p)

    def mul(self, a, b):
        return dict_mul(a, b, self.ring.codec.K, self.p)

    def neg(self, a):
        p = self.p
        return {m: -c % p for m, c in a.items()}

    def from_int(self, a):
        a %= self.p
        return {self.ring.codec.one: a} if a else {}

    def is_constant(self, a):
        return not a or (len(a) == 1 and self.ring.codec.one in a)

    def constant_value(self, a):
        return a.get(self.ring.codec.one, 0)

    def is_unit(self, a):
        return len(a) == 1 and self.ring.codec.one in a

    def inv(self, a):
        c = a[self.ring.codec.one]
        return {self.ring.codec.one: pow(c, self.p - 2, self.p)}

    def text(self, a):
        return Poly(self.ring, a).to_text()


def signed_rep(c, p):
    c %= p
    return c - p if c > p // 2 else c


def dict_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def dict_sub(a, b, p):
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) - c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def dict_mul(a, b, K, p):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.items():
        d = mb - K
        for ma, ca in a.items():
            m = ma + d
            v = (get(m, 0) + ca * cb) % p
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def dict_scale_shift(a, c, shift, p):
    """c * x^shift * a where ``shift`` is a packed monomial minus K."""
    return {m + shift: v * c % p for m, v in a.items()}


class PolyRing:
    """Polynomial ring over GF(p) or over another PolyRing (parameters).

    ``degrees`` is the grading (default standard).  Variables are ordered
    as listed, first is highest.
    """

    def __init__(self, names, order=GREVLEX, p=DEFAULT_PRIME, coeff_ring=None, degrees=None):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = tuple(names)
        self.n = len(names)
        self.order = order
        if coeff_ring is not None:
            p = coeff_ring.p
        self.p = check_prime(p)
        self.coeff_ring = coeff_ring
        self.degrees = tuple(degrees) if degrees is not None else (1,) * self.n
        self.codec = MonomialCodec(self.n, order, self.degrees)
        self.cops = PolyOps(coeff_ring) if coeff_ring is not None else GFOps(self.p)
        self._index = {v: i for i, v in enumerate(names)}

    def __repr__(self):
        base = f"GF({self.p})" if self.coeff_ring is None else repr(self.coeff_ring)
        return f"PolyRing({list(self.names)}, {self.order!r}, over {base})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names \
            and self.order == other.order and self.p == other.p \
            and self.coeff_ring == other.coeff_ring and self.degrees == other.degrees

    def __hash__(self):
        return hash((self.names, self.order, self.p, self.degrees))

    @property
    def is_field_coeffs(self):
        return self.coeff_ring is None

    def index(self, name):
        return self._index[name]

    def with_order(self, order):
        return PolyRing(self.names, order, self.p, self.coeff_ring, self.degrees)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.cops.from_int(c) if isinstance(c, int) else c
        return Poly(self, {self.codec.one: c} if c else {})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def var(self, i):
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {self.codec.encode(e): self.cops.one})

    def monomial(self, exps, coeff=None):
        if len(exps) != self.n:
            raise DimensionMismatch("exponent vector length")
        c = self.cops.one if coeff is None else (self.cops.from_int(coeff) if isinstance(coeff, int) else coeff)
        return Poly(self, {self.codec.encode(exps): c} if c else {})

    def from_terms(self, terms):
        """Build from (exponent tuple, coefficient) pairs; coefficients add up."""
        out = {}
        cops = self.cops
        for exps, c in terms:
            if isinstance(c, int):
                c = cops.from_int(c)
            code = self.codec.encode(exps)
            if code in out:
                c = cops.add(out[code], c)
            if c:
                out[code] = c
            else:
                out.pop(code, None)
        return Poly(self, out)

    def convert(self, f):
        """Re-encode ``f`` from a ring with the same variables."""
        if f.ring is self:
            return f
        if f.ring.names != self.names:
            raise DimensionMismatch("variable names differ")
        dec = f.ring.codec.decode
        enc = self.codec.encode
        return Poly(self, {enc(dec(m)): c for m, c in f.terms.items()})

    def parse(self, text):
        return parse_poly(self, text)

    def monomials_of_degree(self, d):
        return monomials_of_degree(self.n, d)


@lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    """Exponent tuples of degree d in n variables, lex descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


class Poly:
    """Immutable sparse polynomial: ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # structure
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_codes(self):
        return sorted(self.terms, reverse=True)

    def items(self):
        """(exponent tuple, coefficient) pairs in descending term order."""
        dec = self.ring.codec.decode
        return [(dec(m), self.terms[m]) for m in self.sorted_codes()]

    def monomials(self):
        return [e for e, _ in self.items()]

    def lead_code(self):
        return max(self.terms)

    def lead_monomial(self):
        return self.ring.codec.decode(max(self.terms))

    def lead_coeff(self):
        return self.terms[max(self.terms)]

    def lead_term(self):
        m = max(self.terms)
        return Poly(self.ring, {m: self.terms[m]})

    def degree(self):
        """Largest total (graded) degree of a term; -1 for zero."""
        if not self.terms:
            return -1
        deg = self.ring.codec.degree
        return max(deg(m) for m in self.terms)

    def degrees_set(self):
        deg = self.ring.codec.degree
        return {deg(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees_set()) <= 1

    def coefficient(self, exps):
        c = self.terms.get(self.ring.codec.encode(exps))
        return c if c is not None else self.ring.cops.zero

    # arithmetic
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, dict) and self.ring.coeff_ring is not None:
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.ring.is_field_coeffs:
            return Poly(self.ring, dict_add(self.terms, other.terms, self.ring.p))
        cops = self.ring.cops
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = cops.add(out[m], c) if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        cops = self.ring.cops
        return Poly(self.ring, {m: cops.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        K = ring.codec.K
        if ring.is_field_coeffs:
            return Poly(ring, dict_mul(self.terms, other.terms, K, ring.p))
        cops = ring.cops
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = ma + mb - K
                v = cops.mul(ca, cb)
                if m in out:
                    v = cops.add(out[m], v)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        cops = self.ring.cops
        if isinstance(c, int):
            c = cops.from_int(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: cops.mul(v, c) for m, v in self.terms.items() if cops.mul(v, c)})

    def monic(self):
        c = self.lead_coeff()
        cops = self.ring.cops
        if not cops.is_unit(c):
            raise ValueError("lead coefficient is not a unit")
        return self.scale(cops.inv(c))

    def mul_monomial(self, exps, coeff=1):
        return self * self.ring.monomial(exps, coeff)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items() if isinstance(c, int)))

    # evaluation
    def evaluate(self, point):
        """Value at a point (sequence of field elements); GF(p) coefficients only."""
        p = self.ring.p
        total = 0
        for exps, c in self.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def subs_coefficients(self, values):
        """For rings over T: substitute t-values, landing in GF(p)[x]."""
        if self.ring.coeff_ring is None:
            raise ValueError("ring has field coefficients")
        tr = self.ring.coeff_ring
        target = PolyRing(self.ring.names, self.ring.order, self.ring.p, None, self.ring.degrees)
        out = {}
        dec = tr.codec.decode
        p = self.ring.p
        for m, c in self.terms.items():
            v = 0
            for tm, tc in c.items():
                term = tc
                for x, e in zip(values, dec(tm)):
                    if e:
                        term = term * pow(x, e, p) % p
                v += term
            v %= p
            if v:
                out[m - self.ring.codec.K + target.codec.K] = v
        return Poly(target, out)

    # text
    def to_text(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(ring.names, exps) if e
            )
            if ring.is_field_coeffs:
                v = signed_rep(c, ring.p)
                sign = "-" if v < 0 else "+"
                v = abs(v)
                if not mono:
                    body = str(v)
                elif v == 1:
                    body = mono
                else:
                    body = f"{v}*{mono}"
            else:
                sign = "+"
                ctext = Poly(ring.coeff_ring, c).to_text()
                if ring.cops.is_constant(c):
                    v = signed_rep(ring.cops.constant_value(c), ring.p)
                    sign = "-" if v < 0 else "+"
                    v = abs(v)
                    body = mono if (v == 1 and mono) else (f"{v}*{mono}" if mono else str(v))
                elif len(c) == 1:
                    if ctext.startswith("-"):
                        sign, ctext = "-", ctext[1:]
                    body = f"{ctext}*{mono}" if mono else ctext
                else:
                    body = f"({ctext})*{mono}" if mono else f"({ctext})"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def parse_poly(ring, text):
    """Parse ``+``/``-``/``*``/``^`` expressions (parentheses allowed)."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial text")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc
    names = {}
    for i, v in enumerate(ring.names):
        names[v] = ring.var(i)
    if ring.coeff_ring is not None:
        for i, v in enumerate(ring.coeff_ring.names):
            names[v] = ring.const(ring.coeff_ring.var(i).terms)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ring.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"undeclared variable {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)) or e.value < 0:
                    raise ParseError("exponents must be nonnegative integers")
                return ev(node.left) ** e.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


# contraction and coordinate changes

def contract(G, F):
    """Apolarity action of G in S = k[x] on F in R = k[y]; result lies in F's ring."""
    if G.ring.n != F.ring.n:
        raise DimensionMismatch("rings of different dimension")
    p = F.ring.p
    fr = F.ring
    out = {}
    gitems = G.items()
    for beta, fc in F.items():
        for alpha, gc in gitems:
            if all(a <= b for a, b in zip(alpha, beta)):
                c = gc * fc
                for a, b in zip(alpha, beta):
                    for k in range(a):
                        c = c * (b - k) % p
                code = fr.codec.encode(tuple(b - a for a, b in zip(alpha, beta)))
                v = (out.get(code, 0) + c) % p
                if v:
                    out[code] = v
                else:
                    out.pop(code, None)
    return Poly(fr, out)


def mat_det_nonzero(g, p):
    return mat_rank(g, p) == len(g)


def apply_linear_change(f, g):
    """Substitute x_i -> sum_j g[i][j] x_j."""
    ring = f.ring
    n = ring.n
    if len(g) != n or any(len(row) != n for row in g):
        raise DimensionMismatch("matrix size must match the number of variables")
    if not mat_det_nonzero(g, ring.p):
        raise SingularMatrix("coordinate change is not invertible")
    gens = ring.gens()
    images = []
    for i in range(n):
        img = ring.zero()
        for j in range(n):
            if g[i][j] % ring.p:
                img = img + gens[j].scale(int(g[i][j]))
        images.append(img)
    powers = [{0: ring.one()} for _ in range(n)]

    def pw(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = pw(i, e - 1) * images[i]
        return cache[e]

    out = ring.zero()
    for exps, c in f.items():
        term = ring.const(c)
        for i, e in enumerate(exps):
            if e:
                term = term * pw(i, e)
        out = out + term
    return out


def factorial_mod(n, p):
    return math.factorial(n) % p
