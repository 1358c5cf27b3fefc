"""Finite unitary groups GU_n(F_{q^2}) and constructive Hermitian normalization.

Conjugation is x -> x^q; the adjoint is conjugate transpose. A Hermitian space
is a Gram matrix A with A-dagger = A. Normalization to the identity form runs
Hilbert 90 (exhaustive, desk scale), a rescale making the pairing Hermitian,
and Hermitian Gram-Schmidt using surjectivity of the norm F_{q^2} -> F_q.
The symmetric-power embedding and induced-representation spectra realize the
matrix constructions used in the big-image arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import FFElem, FieldDesc, embed, extension_of, field_make
from .linalg import det, mat_identity, mat_inv, mat_mul


class NoSolution(ArithmeticError):
    pass


class Degenerate(ValueError):
    pass


def gu_fields(q, base_p=None, base_f=None):
    """(F_q, F_{q^2}) with the quadratic extension's embedding recorded."""
    if base_p is None:
        p, f = _prime_power(q)
    else:
        p, f = base_p, base_f
    Fq = field_make(p, f)
    Fq2 = extension_of(Fq, 2)
    return Fq, Fq2


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            while q > 1:
                if q % p:
                    raise ValueError(f"{q} is not a prime power")
                q //= p
                f += 1
            return p, f
    raise ValueError("q must be >= 2")


def conj_q(x: FFElem, q: int) -> FFElem:
    return x ** q


def adjoint(M, q):
    """Conjugate transpose: (M^c)^t with c the q-power map."""
    n = len(M)
    return [[M[j][i] ** q for j in range(n)] for i in range(len(M[0]))]


def is_gu(M, q, Fq: FieldDesc):
    """The multiplier in F_q^x if M-dagger * M is a scalar fixed by x -> x^q,
    else None."""
    n = len(M)
    P = mat_mul(adjoint(M, q), M)
    lam = P[0][0]
    if lam.is_zero():
        return None
    Fq2 = lam.field
    for i in range(n):
        for j in range(n):
            want = lam if i == j else Fq2.zero()
            if P[i][j] != want:
                return None
    if lam ** q != lam:
        return None
    # pull back along the recorded embedding
    pre = Fq2._parent[2].get(lam.encoding)
    assert pre is not None and pre.field is Fq
    return pre


def hilbert90_eta(lam: FFElem, q: int) -> FFElem:
    """eta with lam = eta^q / eta, for norm-one lam; exhaustive scan.

    Hilbert 90 guarantees a solution; its absence is asserted, not returned.
    """
    Fq2 = lam.field
    if lam ** (q + 1) != Fq2.one():
        raise ValueError("input must have norm 1")
    for eta in Fq2.nonzero_elements():
        if eta ** q / eta == lam:
            return eta
    raise NoSolution("Hilbert 90 violated")  # pragma: no cover


def norm_preimage(c: FFElem, q: int) -> FFElem:
    """First eta (in dlog order) with eta^(q+1) = c, c in F_q^x embedded."""
    Fq2 = c.field
    for eta in Fq2.nonzero_elements():
        if eta ** (q + 1) == c:
            return eta
    raise NoSolution(f"no norm preimage of {c}")  # pragma: no cover


@dataclass
class GUElement:
    """A matrix known to lie in GU_n, with its multiplier cached."""
    matrix: list
    multiplier: FFElem


def gu_element(M, q, Fq: FieldDesc) -> GUElement:
    mult = is_gu(M, q, Fq)
    if mult is None:
        raise ValueError("matrix is not in GU_n")
    return GUElement([row[:] for row in M], mult)


@dataclass
class HermitianSpace:
    q: int
    n: int
    gram: list                 # n x n over F_{q^2}, gram-dagger = gram
    nondegenerate: bool

    def __post_init__(self):
        A = self.gram
        if adjoint(A, self.q) != A:
            raise ValueError("gram matrix is not Hermitian")
        if self.nondegenerate != (not det(A).is_zero()):
            raise ValueError("nondegenerate flag mismatch")


def hermitian_space(q, gram) -> HermitianSpace:
    return HermitianSpace(q, len(gram), [row[:] for row in gram],
                          not det(gram).is_zero())


def _pairing(A, x, y, q):
    """x-dagger A y for column vectors."""
    field = A[0][0].field
    acc = field.zero()
    for i in range(len(A)):
        xi = x[i] ** q
        if xi.is_zero():
            continue
        for j in range(len(A)):
            acc = acc + xi * A[i][j] * y[j]
    return acc


def diagonalize_to_identity(space: HermitianSpace):
    """Basis change C with C-dagger A C = I, by Hermitian Gram-Schmidt.

    Each step finds an anisotropic vector (deterministically: standard basis
    vectors first, then e_i + g^k e_j sweeps), scales it by a norm preimage,
    and splits off its orthogonal complement. Exact by construction.
    """
    if not space.nondegenerate:
        raise Degenerate("the form is degenerate")
    A = space.gram
    q, n = space.q, space.n
    Fq2 = A[0][0].field
    basis = mat_identity(Fq2, n)          # rows are current candidate vectors
    columns = []
    remaining = [row[:] for row in basis]
    for _ in range(n):
        v = _find_anisotropic(A, remaining, q)
        nv = _pairing(A, v, v, q)
        eta = norm_preimage(nv.inv(), q)  # N(eta) = <v,v>^(-1)
        v = [eta * x for x in v]
        assert _pairing(A, v, v, q) == Fq2.one()
        columns.append(v)
        new_remaining = []
        for w in remaining:
            proj = _pairing(A, v, w, q)
            w2 = [wx - proj * vx for wx, vx in zip(w, v)]
            if any(not x.is_zero() for x in w2):
                new_remaining.append(w2)
        remaining = new_remaining
    C = [[columns[j][i] for j in range(n)] for i in range(n)]
    assert mat_mul(adjoint(C, q), mat_mul(A, C)) == mat_identity(Fq2, n)
    return C


def _find_anisotropic(A, vectors, q):
    field = A[0][0].field
    for v in vectors:
        if not _pairing(A, v, v, q).is_zero():
            return v
    # polarize: v + g^k w must work for some pair and scalar
    for i, v in enumerate(vectors):
        for w in vectors[i + 1:]:
            for c in field.nonzero_elements():
                cand = [x + c * y for x, y in zip(v, w)]
                if not _pairing(A, cand, cand, q).is_zero():
                    return cand
    raise Degenerate("no anisotropic vector: form degenerate on the span")


def conjugate_into_gu(generators, P, q):
    """Conjugate matrices preserving the pairing P up to multiplier into GU_n.

    P must satisfy P-dagger = lam * P with lam of norm 1. Pipeline: Hilbert 90
    gives eta with lam = eta^q/eta, so eta^(-1) P is Hermitian; diagonalize it
    to I; conjugate. Returns (new generators, C, certificate multipliers).
    """
    n = len(P)
    Fq2 = P[0][0].field
    Fq = Fq2._parent[0]
    Pdag = adjoint(P, q)
    lam = None
    for i in range(n):
        for j in range(n):
            if not P[i][j].is_zero():
                lam = Pdag[i][j] / P[i][j]
                break
        if lam is not None:
            break
    if lam is None:
        raise Degenerate("zero pairing")
    if [[lam * x for x in row] for row in P] != Pdag:
        raise ValueError("P-dagger is not a scalar multiple of P")
    eta = hilbert90_eta(lam, q)
    einv = eta.inv()
    A = [[einv * x for x in row] for row in P]
    space = hermitian_space(q, A)
    C = diagonalize_to_identity(space)
    Cinv = mat_inv(C)
    out = []
    multipliers = []
    for M in generators:
        Mc = mat_mul(Cinv, mat_mul(M, C))
        mult = is_gu(Mc, q, Fq)
        assert mult is not None, "conjugated generator not unitary"
        out.append(Mc)
        multipliers.append(mult)
    return out, C, multipliers


# ---------------------------------------------------------------------------
# symmetric powers and induced representations

def sym_power_matrix(M, m):
    """Action of a 2x2 matrix on Sym^(m-1) of the standard representation,
    in the monomial basis x^(m-1), x^(m-2) y, ..., y^(m-1)."""
    a, b, c, d = M[0][0], M[0][1], M[1][0], M[1][1]
    field = a.field
    deg = m - 1
    out = [[field.zero()] * m for _ in range(m)]
    # column j: image of x^(deg-j) y^j = (a x + c y)^(deg-j) (b x + d y)^j
    for j in range(m):
        poly = {0: field.one()}  # exponent of y -> coefficient
        for _ in range(deg - j):
            poly = _lin_mul(poly, a, c, field)
        for _ in range(j):
            poly = _lin_mul(poly, b, d, field)
        for ey, coeff in poly.items():
            out[ey][j] = coeff
    return out


def _lin_mul(poly, cx, cy, field):
    out = {}
    for ey, co in poly.items():
        if not cx.is_zero():
            out[ey] = out.get(ey, field.zero()) + co * cx
        if not cy.is_zero():
            out[ey + 1] = out.get(ey + 1, field.zero()) + co * cy
    return out


def sym_power_form(m, field):
    """Gram matrix on Sym^(m-1) induced by the standard symplectic form,
    from monomial-basis pairings: antidiagonal (m-1-i)! i! (-1)^i."""
    G = [[field.zero()] * m for _ in range(m)]
    fact = [1] * m
    for i in range(1, m):
        fact[i] = fact[i - 1] * i
    for i in range(m):
        v = fact[m - 1 - i] * fact[i] * (-1) ** i
        G[i][m - 1 - i] = field.from_int(v % field.p)
    return G


def sym_power_embed(beta: int, n: int, m: int, p: int):
    """Sym^(m-1) of diag(beta, beta^(-1))^n, conjugated into SU_m(F_{p^2}).

    Returns (B, spectrum, alpha) where B-dagger B = I and det B = 1, and the
    eigenvalue multiset of B equals {1, alpha^n, ..., alpha^(n(m-1))} up to a
    common scalar, alpha = beta^2 (verified by ratio normalization).
    """
    if p <= max(2, m - 1):
        raise ValueError("need p odd and p > m-1 for the induced form")
    Fp, Fp2 = gu_fields(p)
    b2 = embed(Fp.from_int(beta), Fp2)
    if b2.is_zero():
        raise ValueError("beta must be nonzero mod p")
    A = [[b2, Fp2.zero()], [Fp2.zero(), b2.inv()]]
    An = A
    Mn = mat_identity(Fp2, 2)
    for _ in range(n):
        Mn = mat_mul(Mn, A)
    S = sym_power_matrix(Mn, m)
    if m == 1:
        return S, [Fp2.one()], embed(Fp.from_int(beta * beta % p), Fp2)
    G = sym_power_form(m, Fp2)
    (B,), _, mults = conjugate_into_gu([S], G, p)
    assert mults[0] == Fp.one() and det(B) == Fp2.one()
    eigs = matrix_eigenvalues(B)
    alpha = embed(Fp.from_int(beta * beta % p), Fp2)
    expected = [alpha ** (n * j) for j in range(m)]
    assert _multiset_match_up_to_scalar(eigs, expected)
    return B, eigs, alpha


def _multiset_match_up_to_scalar(eigs, expected):
    def key(elem):
        return (elem.k is None, elem.k)
    for e0 in eigs:
        for x0 in expected:
            c = e0 / x0
            scaled = sorted((c * x for x in expected), key=key)
            if scaled == sorted(eigs, key=key):
                return True
    return False


def char_poly_matrix(M):
    """det(X I - M) as an ascending coefficient list over the entry field."""
    n = len(M)
    field = M[0][0].field
    # cofactor expansion on degree-<=1 polynomial entries; n is tiny here
    mat = [[((-M[i][j]), field.one() if i == j else field.zero())
            for j in range(n)] for i in range(n)]

    def pmul(u, v):
        out = [field.zero()] * (len(u) + len(v) - 1)
        for i, ui in enumerate(u):
            if not ui.is_zero():
                for j, vj in enumerate(v):
                    out[i + j] = out[i + j] + ui * vj
        return out

    def padd(u, v):
        L = max(len(u), len(v))
        u = list(u) + [field.zero()] * (L - len(u))
        v = list(v) + [field.zero()] * (L - len(v))
        return [x + y for x, y in zip(u, v)]

    def pneg(u):
        return [-x for x in u]

    def minor_det(rows, cols):
        if len(rows) == 1:
            return list(mat[rows[0]][cols[0]])
        acc = [field.zero()]
        for idx, c in enumerate(cols):
            term = pmul(mat[rows[0]][c], minor_det(rows[1:], cols[:idx] + cols[idx + 1:]))
            acc = padd(acc, term if idx % 2 == 0 else pneg(term))
        return acc

    out = minor_det(tuple(range(n)), tuple(range(n)))
    return out + [field.zero()] * (n + 1 - len(out))


def matrix_eigenvalues(M, allow_extension=True):
    """Eigenvalues (with multiplicity) by scanning the field for roots of the
    characteristic polynomial; extends the field if some roots live upstairs."""
    field = M[0][0].field
    cp = char_poly_matrix(M)
    eigs, rem = _roots_with_multiplicity(cp, field)
    if not rem and len(eigs) == len(M):
        return eigs
    if not allow_extension:
        raise NoSolution("eigenvalues not all rational over the entry field")
    deg = len(rem) - 1
    E = extension_of(field, deg)
    cp_up = [embed(c, E) for c in cp]
    eigs_up, rem_up = _roots_with_multiplicity(cp_up, E)
    assert not rem_up, "splitting field too small"
    return eigs_up


def _roots_with_multiplicity(poly, field):
    def ev(pol, x):
        acc = field.zero()
        for c in reversed(pol):
            acc = acc * x + c
        return acc

    def divide_linear(pol, r):
        # pol / (X - r), exact
        n = len(pol) - 1
        q = [field.zero()] * n
        q[n - 1] = pol[n]
        for i in range(n - 1, 0, -1):
            q[i - 1] = pol[i] + r * q[i]
        assert (pol[0] + r * q[0]).is_zero()
        return q

    eigs = []
    cur = list(poly)
    while len(cur) > 1:
        root = next((x for x in field.elements() if ev(cur, x).is_zero()), None)
        if root is None:
            break
        eigs.append(root)
        cur = divide_linear(cur, root)
    return eigs, (cur if len(cur) > 1 else [])


def induced_spectrum(psi_values, field: FieldDesc, frobenius_case=1):
    """Eigenvalues of the induced block-cycle matrix for a generator Frobenius.

    psi_values are the m nonzero values of the character on the sigma-orbit;
    the matrix sends e_i to psi_i e_(i+shift). The eigenvalue multiset is
    {lam * zeta^j} for zeta a primitive m-th root of unity (ratio-tested).
    frobenius_case selects which generator of the cyclic group acts.
    """
    from math import gcd
    m = len(psi_values)
    if m < 2:
        raise ValueError("need m >= 2")
    if gcd(frobenius_case, m) != 1:
        raise ValueError("frobenius_case must generate Z/m")
    if (field.q - 1) % m != 0:
        raise ValueError("ambient field must contain mu_m")
    M = [[field.zero()] * m for _ in range(m)]
    for i, v in enumerate(psi_values):
        if v.is_zero():
            raise ValueError("psi values must be nonzero")
        M[(i + frobenius_case) % m][i] = v
    eigs = matrix_eigenvalues(M)
    lam = eigs[0]
    ratios = sorted((e / lam).k for e in eigs)
    efield = eigs[0].field
    mu_m = sorted(((efield.q - 1) // m * j) % (efield.q - 1) for j in range(m))
    assert ratios == mu_m, (ratios, mu_m)
    return eigs


def eigenvalue_genericity(alpha: int, m: int, n: int, p: int) -> bool:
    """True iff the m*n products alpha^i zeta^j (i < n, j < m, zeta of exact
    order m) are pairwise distinct, in the smallest field containing mu_m."""
    k = 1
    while (p ** k - 1) % m != 0:
        k += 1
    Fp = field_make(p, 1)
    if k == 1:
        F = Fp
        a = F.from_int(alpha)
    else:
        F = extension_of(Fp, k)
        a = embed(Fp.from_int(alpha), F)
    if a.is_zero():
        raise ValueError("alpha must be nonzero mod p")
    zeta = F.from_dlog((F.q - 1) // m)
    seen = set()
    for i in range(n):
        for j in range(m):
            seen.add((a ** i * zeta ** j).k)
    return len(seen) == m * n
