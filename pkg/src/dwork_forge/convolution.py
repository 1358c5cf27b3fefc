"""Exact cyclic convolution of nonnegative integer arrays.

The trace scan works in the group ring Z[C_L x C_N] (L = q-1 indexed by
discrete logs, N indexed by zeta-exponents). Convolution is done by Kronecker
substitution into one big integer: entry (i, j) is packed at bit offset
B*(i*W + j) with W = 2N-1 so column sums never bleed into the next row block.
One big-int multiplication then yields the full 2-D acyclic convolution, which
is folded cyclically in both axes. Everything is exact; B is chosen from the
actual value bounds (rounded to whole bytes so unpacking is byte slicing).
"""

from __future__ import annotations


def _pack(mat, B, W):
    step = B // 8
    buf = bytearray(step * len(mat) * W)
    pos = 0
    for row in mat:
        for v in row:
            if v:
                buf[pos:pos + step] = v.to_bytes(step, "little")
            pos += step
        pos += step * (W - len(row))
    return int.from_bytes(buf, "little")


def conv2d_cyclic(a, b, L, N):
    """Cyclic convolution over (Z/L) x (Z/N) of two L x N count matrices."""
    assert len(a) == L and len(b) == L
    max_a = max((max(row) for row in a), default=0)
    max_b = max((max(row) for row in b), default=0)
    if max_a == 0 or max_b == 0:
        return [[0] * N for _ in range(L)]
    sum_a = sum(v for row in a for v in row)
    sum_b = sum(v for row in b for v in row)
    bound = min(sum_a * max_b, sum_b * max_a)
    B = ((bound.bit_length() + 2 + 7) // 8) * 8
    W = 2 * N - 1
    prod = _pack(a, B, W) * _pack(b, B, W)
    step = B // 8
    nrows = 2 * L - 1
    raw = prod.to_bytes(step * (nrows * W + 1), "little")
    out = [[0] * N for _ in range(L)]
    for i in range(nrows):
        orow = out[i % L]
        base = i * W * step
        for j in range(W):
            off = base + j * step
            v = int.from_bytes(raw[off:off + step], "little")
            if v:
                orow[j % N] += v
    return out


def conv1d_cyclic(a, b):
    """Cyclic convolution of two equal-length nonnegative integer vectors."""
    L = len(a)
    out2 = conv2d_cyclic([[v] for v in a], [[v] for v in b], L, 1)
    return [row[0] for row in out2]
