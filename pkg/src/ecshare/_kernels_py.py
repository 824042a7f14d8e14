"""Pure-Python/numpy implementations of the enumeration kernels.

Every function here has a Cython twin in ``_kernels_c.pyx`` with the same
signature and the same output order.  Field elements are uint8 codes and
arithmetic is table lookup.

Message order: index ``i`` encodes ``u`` in base q with ``u[0]`` the most
significant digit (``itertools.product`` order).
"""
from __future__ import annotations

import numpy as np

_CHUNK_ROWS = 1 << 16


def codewords(gen: np.ndarray, add: np.ndarray, mul: np.ndarray) -> np.ndarray:
    gen = np.asarray(gen, dtype=np.uint8)
    k, n = gen.shape
    q = add.shape[0]
    scalars = np.arange(q, dtype=np.uint8)
    words = np.zeros((1, n), dtype=np.uint8)
    for i in range(k):
        contrib = mul[scalars[:, None], gen[i][None, :]]  # (q, n)
        words = add[words[:, None, :], contrib[None, :, :]].reshape(-1, n)
    return words


def _chunks(gen, add, mul):
    """Yield (offset, block) of consecutive codewords without materializing all."""
    gen = np.asarray(gen, dtype=np.uint8)
    k, n = gen.shape
    q = add.shape[0]
    # split messages into a high part (enumerated in python) and a low part (vectorized)
    low = 0
    while low < k and q ** (low + 1) <= _CHUNK_ROWS:
        low += 1
    high = k - low
    low_words = codewords(gen[high:], add, mul) if low else np.zeros((1, n), dtype=np.uint8)
    block = low_words.shape[0]
    for h, head in enumerate(_iter_head(gen[:high], add, mul)):
        yield h * block, add[head[None, :], low_words]


def _iter_head(gen, add, mul):
    k, n = gen.shape
    q = add.shape[0]
    if k == 0:
        yield np.zeros(n, dtype=np.uint8)
        return
    for idx in range(q**k):
        u, rest = [], idx
        for _ in range(k):
            rest, d = divmod(rest, q)
            u.append(d)
        u.reverse()
        w = np.zeros(n, dtype=np.uint8)
        for i, d in enumerate(u):
            if d:
                w = add[w, mul[d, gen[i]]]
        yield w


def min_weight(gen, add, mul, start: int, c0_nonzero: bool) -> int:
    """Minimum weight on columns ``start:`` over nonzero codewords.

    With ``c0_nonzero`` only codewords whose column 0 is nonzero count.
    Returns -1 when no codeword passes the filter.
    """
    best = -1
    for offset, block in _chunks(gen, add, mul):
        if c0_nonzero:
            block = block[block[:, 0] != 0]
        else:
            if offset == 0:
                block = block[1:]
            block = block[block.any(axis=1)]
        if not len(block):
            continue
        w = int(np.count_nonzero(block[:, start:], axis=1).min())
        if best < 0 or w < best:
            best = w
    return best


def nearest(gen, add, mul, target, start: int):
    """Distance on columns ``start:`` to the nearest codewords, and their message indices."""
    target = np.asarray(target, dtype=np.uint8)
    best, hits = None, []
    for offset, block in _chunks(gen, add, mul):
        d = np.count_nonzero(block[:, start:] != target[None, :], axis=1)
        dm = int(d.min())
        idx = (np.nonzero(d == dm)[0] + offset).tolist()
        if best is None or dm < best:
            best, hits = dm, idx
        elif dm == best:
            hits.extend(idx)
    return best, np.asarray(hits, dtype=np.int64)


def qualified_flags(cols, add, mul, neg, inv) -> np.ndarray:
    """Qualification of every player subset by the column-span test.

    ``cols`` is the k x (n+1) generator of the sharing code; column 0 is the
    secret column g_0.  Entry ``mask`` of the result is True iff g_0 lies in
    the span of the columns {i+1 : bit i of mask set}.  Depth-first over
    subsets in index order with an incrementally reduced basis; a branch
    stops at the first qualified prefix, whose supersets stay True.
    """
    cols = np.asarray(cols, dtype=np.int64)
    k, n1 = cols.shape
    n = n1 - 1
    addl, mull, negl, invl = add.tolist(), mul.tolist(), neg.tolist(), inv.tolist()
    columns = [cols[:, j].tolist() for j in range(n1)]
    flags = np.ones(1 << n, dtype=bool)

    def axpy(x, a, y):  # x - a*y
        na = negl[a]
        row = mull[na]
        return [addl[xi][row[yi]] for xi, yi in zip(x, y)]

    def reduce(v, basis):
        for piv, b in basis:
            c = v[piv]
            if c:
                v = axpy(v, c, b)
        return v

    residual0 = columns[0]
    if not any(residual0):
        return flags  # degenerate: secret column zero, everything "qualified"
    flags[0] = False
    stack = [(0, 0, [], residual0)]
    while stack:
        start, mask, basis, resid = stack.pop()
        for i in range(start, n):
            v = reduce(columns[i + 1], basis)
            nb, nr = basis, resid
            piv = next((j for j, x in enumerate(v) if x), None)
            if piv is not None:
                v = [mull[invl[v[piv]]][x] for x in v]
                nb = basis + [(piv, v)]
                c = resid[piv]
                if c:
                    nr = axpy(resid, c, v)
            m2 = mask | (1 << i)
            if any(nr):
                flags[m2] = False
                stack.append((i + 1, m2, nb, nr))
    return flags
