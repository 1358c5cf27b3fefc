import random

import pytest

from dwork_forge.cyclotomic import (CyclotomicInt, ExactDivisionFailed,
                                    all_embeddings, cyclotomic_polynomial,
                                    euler_phi_of)


def rand_elem(rng, N, bound=9):
    phi = euler_phi_of(N)
    return CyclotomicInt(N, [rng.randrange(-bound, bound + 1) for _ in range(phi)])


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # prime N: 1 + x + ... + x^(N-1)
    assert cyclotomic_polynomial(11) == tuple([1] * 11)[:11]


@pytest.mark.parametrize("N", [3, 4, 5, 8, 11, 12, 15])
def test_ring_axioms_random(N):
    rng = random.Random(N)
    for _ in range(60):
        a, b, c = (rand_elem(rng, N) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a + CyclotomicInt.zero(N) == a
        assert a * CyclotomicInt.one(N) == a


def test_zeta_power_relations():
    for N in (3, 5, 7, 11):
        z = CyclotomicInt.zeta_pow(N, 1)
        assert z ** N == 1
        acc = CyclotomicInt.zero(N)
        for j in range(N):
            acc = acc + CyclotomicInt.zeta_pow(N, j)
        assert acc.is_zero()  # sum of all N-th roots of unity


def test_conj_examples():
    assert CyclotomicInt.one(5).conj() == 1
    # conj(zeta_3) = zeta_3^2 = -1 - zeta_3
    z3 = CyclotomicInt.zeta_pow(3, 1)
    assert z3.conj() == CyclotomicInt(3, (-1, -1))
    rng = random.Random(0)
    for N in (5, 7, 12):
        for _ in range(40):
            a = rand_elem(rng, N)
            assert a.conj().conj() == a
            assert (a * a.conj()).conj() == a * a.conj()
    # conj fixes rationals
    assert CyclotomicInt.from_int(7, -12).conj() == -12


def test_conj_is_ring_map():
    rng = random.Random(1)
    for _ in range(40):
        a, b = rand_elem(rng, 5), rand_elem(rng, 5)
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()


def test_embed_examples():
    assert CyclotomicInt.one(5).embed_complex() == pytest.approx(1.0)
    z4 = CyclotomicInt.zeta_pow(4, 1)
    assert abs(z4.embed_complex(1) - 1j) < 1e-12


@pytest.mark.parametrize("N", [3, 5, 8, 12, 24])
def test_embed_homomorphism(N):
    rng = random.Random(N)
    for _ in range(30):
        a = rand_elem(rng, N, bound=1000)
        b = rand_elem(rng, N, bound=1000)
        err = abs(a.embed_complex() * b.embed_complex() - (a * b).embed_complex())
        assert err < 1e-9 * max(1.0, abs((a * b).embed_complex()))
        # conjugation preserves absolute values
        assert abs(abs(a.conj().embed_complex()) - abs(a.embed_complex())) < 1e-6


def test_all_embeddings_count():
    a = rand_elem(random.Random(3), 12)
    assert len(all_embeddings(a)) == euler_phi_of(12)


def test_exact_division():
    a = CyclotomicInt(5, (4, -8, 12, 0))
    assert a.exact_div_int(4) == CyclotomicInt(5, (1, -2, 3, 0))
    with pytest.raises(ExactDivisionFailed):
        a.exact_div_int(3)
    with pytest.raises(ZeroDivisionError):
        a.exact_div_int(0)


def test_galois_orbit_of_counts():
    # galois(c) sends zeta^j to zeta^(cj): 1 + 2z + 3z^4 -> 1 + 3z + 2z^2
    N = 7
    a = CyclotomicInt.from_zeta_counts(N, [1, 2, 0, 0, 3, 0, 0])
    g = a.galois_apply(2)
    assert g == CyclotomicInt.from_zeta_counts(N, [1, 3, 2, 0, 0, 0, 0])
