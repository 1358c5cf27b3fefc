import random

from dwork_forge.convolution import conv1d_cyclic, conv2d_cyclic


def naive_conv2d(a, b, L, N):
    out = [[0] * N for _ in range(L)]
    for i1 in range(L):
        for j1 in range(N):
            v = a[i1][j1]
            if not v:
                continue
            for i2 in range(L):
                for j2 in range(N):
                    out[(i1 + i2) % L][(j1 + j2) % N] += v * b[i2][j2]
    return out


def test_conv2d_matches_naive():
    rng = random.Random(0)
    for L, N in [(5, 3), (8, 1), (12, 5), (7, 11)]:
        a = [[rng.randrange(6) for _ in range(N)] for _ in range(L)]
        b = [[rng.randrange(6) for _ in range(N)] for _ in range(L)]
        assert conv2d_cyclic(a, b, L, N) == naive_conv2d(a, b, L, N)


def test_conv2d_big_values_exact():
    rng = random.Random(1)
    L, N = 6, 4
    a = [[rng.randrange(10 ** 12) for _ in range(N)] for _ in range(L)]
    b = [[rng.randrange(10 ** 12) for _ in range(N)] for _ in range(L)]
    assert conv2d_cyclic(a, b, L, N) == naive_conv2d(a, b, L, N)


def test_conv2d_zero():
    z = [[0] * 3 for _ in range(4)]
    a = [[1, 2, 3]] * 4
    assert conv2d_cyclic(a, z, 4, 3) == z


def test_conv1d():
    a, b = [1, 2, 3, 4], [5, 0, 0, 1]
    want = [0, 0, 0, 0]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            want[(i + j) % 4] += x * y
    assert conv1d_cyclic(a, b) == want
