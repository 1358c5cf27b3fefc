"""Finite fields F_{p^f} in discrete-log form.

A FieldDesc fixes a deterministic defining polynomial (lexicographically first
monic irreducible), a multiplicative generator g, a full dlog table and a Zech
logarithm table, so multiplication is exponent arithmetic and addition is one
table lookup. Multiplicative characters valued in Z[zeta_N] are evaluated
against a recorded N-torsion anchor; fields built with extension_of() inherit
the anchor of their base through the recorded embedding, which is what makes
"the same point over a bigger field" well defined.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import CyclotomicInt

TABLE_LIMIT = 1 << 20


class FFError(Exception):
    pass


class NotPrime(FFError):
    pass


class TooLarge(FFError):
    pass


class IncompatibleFields(FFError):
    pass


class NNotDividingQMinus1(FFError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomial arithmetic over F_p (ascending tuples) ---------------

def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            c = c * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _ppowmod(base, n, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def _psub_x(a, p):
    """a(y) - y, trimmed."""
    out = list(a) + [0] * max(0, 2 - len(a))
    out[1] = (out[1] - 1) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while len(b) > 1 or b[0] != 0:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(poly, p):
    """Rabin irreducibility test for a monic polynomial over F_p."""
    f = len(poly) - 1
    x = [0, 1]
    if _psub_x(_ppowmod(x, p ** f, poly, p), p) != [0]:
        return False
    for r in _prime_factors(f):
        g = _pgcd(poly, _psub_x(_ppowmod(x, p ** (f // r), poly, p), p), p)
        if len(g) > 1:
            return False
    return True


class FFElem:
    """Field element: either zero or g^k for the field's generator g."""

    __slots__ = ("field", "k")

    def __init__(self, field, k):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "k", None if k is None else k % (field.q - 1))

    def __setattr__(self, *a):
        raise AttributeError("FFElem is immutable")

    def is_zero(self):
        return self.k is None

    @property
    def encoding(self):
        """Integer encoding (base-p digits are the coordinates)."""
        return 0 if self.k is None else self.field._pow[self.k]

    def _same(self, other):
        if not isinstance(other, FFElem):
            raise IncompatibleFields(f"expected FFElem, got {type(other).__name__}")
        if other.field is not self.field:
            raise IncompatibleFields("elements of different fields")

    def __mul__(self, other):
        self._same(other)
        if self.k is None or other.k is None:
            return self.field.zero()
        return FFElem(self.field, self.k + other.k)

    def __truediv__(self, other):
        self._same(other)
        if other.k is None:
            raise ZeroDivisionError("division by field zero")
        if self.k is None:
            return self
        return FFElem(self.field, self.k - other.k)

    def inv(self):
        if self.k is None:
            raise ZeroDivisionError("inverting field zero")
        return FFElem(self.field, -self.k)

    def __pow__(self, n):
        if self.k is None:
            if n <= 0:
                raise ZeroDivisionError("0**n for n <= 0")
            return self
        return FFElem(self.field, self.k * n)

    def __add__(self, other):
        self._same(other)
        if self.k is None:
            return other
        if other.k is None:
            return self
        z = self.field._zech[(other.k - self.k) % (self.field.q - 1)]
        if z is None:
            return self.field.zero()
        return FFElem(self.field, self.k + z)

    def __neg__(self):
        if self.k is None or self.field.p == 2:
            return self
        return FFElem(self.field, self.k + (self.field.q - 1) // 2)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field is other.field and self.k == other.k

    def __hash__(self):
        return hash((id(self.field), self.k))

    def __repr__(self):
        if self.k is None:
            return f"FF(0; {self.field.label})"
        return f"FF(g^{self.k}={self.encoding}; {self.field.label})"


class FieldDesc:
    """Immutable description of F_{p^f} with dlog and Zech tables."""

    def __init__(self, p, f, seed=0):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        q = p ** f
        if q > TABLE_LIMIT:
            raise TooLarge(f"q = {q} exceeds table limit {TABLE_LIMIT}")
        self.p = p
        self.f = f
        self.q = q
        self.seed = seed
        self.defining_poly = self._find_defining_poly()
        self._build_tables()
        self.label = f"F_{q}" if f == 1 else f"F_{p}^{f}"
        # base-field embedding data, set by extension_of()
        self._parent = None          # (base FieldDesc, emb list, emb_inv dict)
        self._anchor_cache = {}

    def _find_defining_poly(self):
        p, f = self.p, self.f
        if f == 1:
            return (0, 1)
        for enc in range(p ** f):
            low = []
            e = enc
            for _ in range(f):
                low.append(e % p)
                e //= p
            poly = tuple(low) + (1,)
            if _is_irreducible(poly, p):
                return poly
        raise FFError("no irreducible polynomial found")  # pragma: no cover

    def _enc_to_poly(self, enc):
        out = []
        for _ in range(self.f):
            out.append(enc % self.p)
            enc //= self.p
        return out

    def _poly_to_enc(self, poly):
        enc = 0
        for c in reversed(poly):
            enc = enc * self.p + (c % self.p)
        return enc

    def _build_tables(self):
        p, f, q = self.p, self.f, self.q
        defpoly = list(self.defining_poly)

        def mul_enc(a_enc, b_enc):
            prod = _pmul(self._enc_to_poly(a_enc), self._enc_to_poly(b_enc), p)
            return self._poly_to_enc(_pmod(prod, defpoly, p) if f > 1 else prod)

        def pow_enc(a_enc, n):
            r = 1
            while n:
                if n & 1:
                    r = mul_enc(r, a_enc)
                a_enc = mul_enc(a_enc, a_enc)
                n >>= 1
            return r

        factors = _prime_factors(q - 1)
        gen = None
        for enc in range(2, q):
            if all(pow_enc(enc, (q - 1) // r) != 1 for r in factors):
                gen = enc
                break
        assert gen is not None
        self.g_encoding = gen

        powtab = [1] * (q - 1)
        for k in range(1, q - 1):
            powtab[k] = mul_enc(powtab[k - 1], gen)
        dlog = [None] * q
        for k, enc in enumerate(powtab):
            dlog[enc] = k
        zech = [None] * (q - 1)
        for k in range(q - 1):
            # encoding addition is digitwise mod p
            a, b = self._enc_to_poly(1), self._enc_to_poly(powtab[k])
            s = self._poly_to_enc([(x + y) % p for x, y in zip(a, b)])
            zech[k] = dlog[s]
        self._pow = powtab
        self._dlog = dlog
        self._zech = zech

    # -- element constructors ---------------------------------------------
    def zero(self):
        return FFElem(self, None)

    def one(self):
        return FFElem(self, 0)

    def gen(self):
        return FFElem(self, 1)

    def from_dlog(self, k):
        return FFElem(self, k)

    def from_encoding(self, enc):
        if enc == 0:
            return self.zero()
        k = self._dlog[enc]
        if k is None:
            raise FFError(f"invalid encoding {enc}")
        return FFElem(self, k)

    def from_int(self, c):
        """Image of the integer c under Z -> F_p -> field."""
        return self.from_encoding(c % self.p)

    def dlog(self, x):
        if x.field is not self:
            raise IncompatibleFields("dlog of foreign element")
        if x.k is None:
            raise ValueError("dlog of zero")
        return x.k

    def elements(self):
        yield self.zero()
        for k in range(self.q - 1):
            yield FFElem(self, k)

    def nonzero_elements(self):
        for k in range(self.q - 1):
            yield FFElem(self, k)

    # -- subfield structure -------------------------------------------------
    def embed_from(self, base):
        """The recorded embedding base -> self, as a callable."""
        if self._parent is None or self._parent[0] is not base:
            raise IncompatibleFields("no recorded embedding from that field")
        emb = self._parent[1]
        return lambda x: emb[x.encoding]

    def zeta_anchor(self, N):
        """The N-torsion element anchoring characters of exponent conventions.

        Base fields use g^((q-1)/N); extension fields inherit the base anchor
        through the recorded embedding whenever the base already contains
        mu_N. Cached per N.
        """
        if (self.q - 1) % N != 0:
            raise NNotDividingQMinus1(f"N={N} does not divide q-1={self.q - 1}")
        if N in self._anchor_cache:
            return self._anchor_cache[N]
        if self._parent is not None and (self._parent[0].q - 1) % N == 0:
            base, emb, _ = self._parent
            anchor = emb[base.zeta_anchor(N).encoding]
        else:
            anchor = FFElem(self, (self.q - 1) // N)
        self._anchor_cache[N] = anchor
        return anchor

    def __repr__(self):
        return f"FieldDesc(p={self.p}, f={self.f}, poly={self.defining_poly}, g={self.g_encoding})"


@lru_cache(maxsize=None)
def field_make(p, f, seed=0) -> FieldDesc:
    """Deterministic construction of F_{p^f} (cached, shared, immutable)."""
    return FieldDesc(p, f, seed)


@lru_cache(maxsize=None)
def extension_of(base: FieldDesc, d: int) -> FieldDesc:
    """F_{q^d} over the given base, with embedding and anchor recorded."""
    if d == 1:
        return base
    big = FieldDesc(base.p, base.f * d, base.seed)
    # image of the base's x-bar: first root of the base defining polynomial,
    # in dlog order; f=1 embeds the prime field canonically.
    if base.f == 1:
        rho = big.one()
    else:
        coeffs = [big.from_int(c) for c in base.defining_poly]
        rho = None
        for cand in big.nonzero_elements():
            if cand.k * (base.q - 1) % (big.q - 1) != 0:
                continue  # a root must lie in the subfield of size base.q
            acc = big.zero()
            for c in reversed(coeffs):
                acc = acc * cand + c
            if acc.is_zero():
                rho = cand
                break
        if rho is None:  # pragma: no cover
            raise FFError("no root of base polynomial in extension")
    rho_pows = [big.one()]
    for _ in range(base.f - 1):
        rho_pows.append(rho_pows[-1] * rho)
    emb = [big.zero()] * base.q
    emb_inv = {}
    for x in base.elements():
        digits = base._enc_to_poly(x.encoding)
        acc = big.zero()
        for c, rp in zip(digits, rho_pows):
            if c:
                acc = acc + big.from_int(c) * rp
        emb[x.encoding] = acc
        emb_inv[acc.encoding] = x
    big._parent = (base, emb, emb_inv)
    return big


def embed(x: FFElem, big: FieldDesc) -> FFElem:
    """Apply the recorded embedding of x's field into big."""
    if big._parent is None or big._parent[0] is not x.field:
        raise IncompatibleFields("no recorded embedding for this pair")
    return big._parent[1][x.encoding]


def norm_to_subfield(x: FFElem, base: FieldDesc) -> FFElem:
    """Norm F_{q^d} -> F_q along the recorded embedding: x^(1+q+...+q^(d-1))."""
    big = x.field
    if big is base:
        return x
    if big._parent is None or big._parent[0] is not base:
        raise IncompatibleFields("norm target is not the recorded base field")
    if x.is_zero():
        return base.zero()
    exp = (big.q - 1) // (base.q - 1)
    img = x ** exp
    pre = big._parent[2].get(img.encoding)
    assert pre is not None, "norm image must lie in the embedded base field"
    return pre


@lru_cache(maxsize=None)
def _anchor_inverse(field: FieldDesc, N: int) -> int:
    """Inverse mod N of j where zeta_anchor = g^(j*(q-1)/N)."""
    anchor = field.zeta_anchor(N)
    step = (field.q - 1) // N
    j, rem = divmod(anchor.k, step)
    assert rem == 0 and j % N != 0
    return pow(j, -1, N)


def char_exponent(N: int, m: int, y: FFElem):
    """Exponent a with chi_m(y) = zeta_N^a, or None for y = 0.

    chi_m sends the anchored N-torsion generator to zeta_N^m; equivalently
    chi_m(y) = rho_m(y^((q-1)/N)) with rho_m anchored at zeta_anchor(N).
    """
    if y.is_zero():
        return None
    jinv = _anchor_inverse(y.field, N)
    return (m * y.k * jinv) % N


def char_value(N: int, m: int, y: FFElem) -> CyclotomicInt:
    """Multiplicative character value in Z[zeta_N]; chi_m(0) = 0."""
    e = char_exponent(N, m, y)
    if e is None:
        return CyclotomicInt.zero(N)
    return CyclotomicInt.zeta_pow(N, e)
