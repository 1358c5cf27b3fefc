import random

import pytest

from dwork_forge.ff import field_make
from dwork_forge.linalg import (SingularMatrix, det, left_null_space,
                                mat_identity, mat_inv, mat_mul, null_space,
                                solve_linear)

F = field_make(5, 1)


def rand_mat(rng, n, m=None):
    m = m or n
    return [[F.from_encoding(rng.randrange(5)) for _ in range(m)]
            for _ in range(n)]


def test_inverse_and_det():
    rng = random.Random(0)
    for _ in range(40):
        A = rand_mat(rng, 3)
        if det(A).is_zero():
            with pytest.raises(SingularMatrix):
                mat_inv(A)
            continue
        assert mat_mul(A, mat_inv(A)) == mat_identity(F, 3)


def test_det_multiplicative():
    rng = random.Random(1)
    for _ in range(40):
        A, B = rand_mat(rng, 3), rand_mat(rng, 3)
        assert det(mat_mul(A, B)) == det(A) * det(B)


def test_solve_consistent_and_inconsistent():
    rng = random.Random(2)
    for _ in range(40):
        A = rand_mat(rng, 4, 3)
        x = [F.from_encoding(rng.randrange(5)) for _ in range(3)]
        b = [sum((a * v for a, v in zip(row, x)), F.zero()) for row in A]
        sol = solve_linear(A, b, F)
        assert sol is not None
        again = [sum((a * v for a, v in zip(row, sol)), F.zero()) for row in A]
        assert again == b
    # inconsistent: 0 = 1
    A = [[F.zero()]]
    assert solve_linear(A, [F.one()], F) is None


def test_null_spaces():
    rng = random.Random(3)
    for _ in range(30):
        A = rand_mat(rng, 3, 5)
        for v in null_space(A, F):
            img = [sum((a * x for a, x in zip(row, v)), F.zero()) for row in A]
            assert all(y.is_zero() for y in img)
        for w in left_null_space(A, F):
            img = [sum((w[i] * A[i][j] for i in range(3)), F.zero())
                   for j in range(5)]
            assert all(y.is_zero() for y in img)
        # rank-nullity
        assert len(null_space(A, F)) == 5 - (3 - len(left_null_space(A, F)))
