# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see _kernels_py for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

cnp.import_array()

ctypedef cnp.uint8_t u8


cdef inline void _refresh(const u8* gen, const u8* add, const u8* mul, int q,
                          u8* partial, int* u, int frm, int k, int n) noexcept nogil:
    # partial[(i+1)*n + j] = partial[i*n + j] + u[i] * gen[i, j]; tables are q x q row-major
    cdef int i, j
    cdef const u8* mrow
    cdef const u8* grow
    for i in range(frm, k):
        mrow = mul + u[i] * q
        grow = gen + i * n
        for j in range(n):
            partial[(i + 1) * n + j] = add[partial[i * n + j] * q + mrow[grow[j]]]


cdef inline int _advance(int* u, int k, int q) noexcept nogil:
    # odometer step; returns the most significant changed digit, or -1 on wrap
    cdef int i = k - 1
    while i >= 0:
        u[i] += 1
        if u[i] < q:
            return i
        u[i] = 0
        i -= 1
    return -1


def codewords(gen_in, const u8[:, ::1] add, const u8[:, ::1] mul):
    cdef const u8[:, ::1] gen = np.ascontiguousarray(gen_in, dtype=np.uint8)
    cdef int k = gen.shape[0], n = gen.shape[1], q = add.shape[0]
    cdef long total = 1
    cdef int i
    for i in range(k):
        total *= q
    out = np.empty((total, n), dtype=np.uint8)
    cdef u8[:, :] ov = out
    cdef u8* partial = <u8*> malloc((k + 1) * n)
    cdef int* u = <int*> malloc((k + 1) * sizeof(int))
    cdef long idx = 0
    cdef int changed = 0
    try:
        memset(partial, 0, (k + 1) * n)
        memset(u, 0, (k + 1) * sizeof(int))
        with nogil:
            while True:
                _refresh(&gen[0, 0], &add[0, 0], &mul[0, 0], q, partial, u, changed, k, n)
                memcpy(&ov[idx, 0], &partial[k * n], n)
                idx += 1
                changed = _advance(u, k, q)
                if changed < 0:
                    break
    finally:
        free(partial)
        free(u)
    return out


def min_weight(gen_in, const u8[:, ::1] add, const u8[:, ::1] mul, int start, bint c0_nonzero):
    cdef const u8[:, ::1] gen = np.ascontiguousarray(gen_in, dtype=np.uint8)
    cdef int k = gen.shape[0], n = gen.shape[1], q = add.shape[0]
    cdef u8* partial = <u8*> malloc((k + 1) * n)
    cdef int* u = <int*> malloc((k + 1) * sizeof(int))
    cdef int best = -1, w, j, changed = 0
    cdef bint first = True, nonzero
    cdef u8* word
    try:
        memset(partial, 0, (k + 1) * n)
        memset(u, 0, (k + 1) * sizeof(int))
        with nogil:
            while True:
                _refresh(&gen[0, 0], &add[0, 0], &mul[0, 0], q, partial, u, changed, k, n)
                word = &partial[k * n]
                if c0_nonzero:
                    nonzero = word[0] != 0
                else:
                    nonzero = not first
                    if nonzero:
                        nonzero = False
                        for j in range(n):
                            if word[j]:
                                nonzero = True
                                break
                if nonzero:
                    w = 0
                    for j in range(start, n):
                        if word[j]:
                            w += 1
                    if best < 0 or w < best:
                        best = w
                first = False
                changed = _advance(u, k, q)
                if changed < 0:
                    break
    finally:
        free(partial)
        free(u)
    return best


def nearest(gen_in, const u8[:, ::1] add, const u8[:, ::1] mul, target_in, int start):
    cdef const u8[:, ::1] gen = np.ascontiguousarray(gen_in, dtype=np.uint8)
    cdef const u8[:] target = np.ascontiguousarray(target_in, dtype=np.uint8)
    cdef int k = gen.shape[0], n = gen.shape[1], q = add.shape[0]
    cdef u8* partial = <u8*> malloc((k + 1) * n)
    cdef int* u = <int*> malloc((k + 1) * sizeof(int))
    cdef int best = n + 1, d, j, changed = 0
    cdef long idx = 0
    cdef u8* word
    hits = []
    try:
        memset(partial, 0, (k + 1) * n)
        memset(u, 0, (k + 1) * sizeof(int))
        while True:
            _refresh(&gen[0, 0], &add[0, 0], &mul[0, 0], q, partial, u, changed, k, n)
            word = &partial[k * n]
            d = 0
            for j in range(start, n):
                if word[j] != target[j - start]:
                    d += 1
            if d < best:
                best = d
                hits = [idx]
            elif d == best:
                hits.append(idx)
            idx += 1
            changed = _advance(u, k, q)
            if changed < 0:
                break
    finally:
        free(partial)
        free(u)
    return best, np.asarray(hits, dtype=np.int64)


def qualified_flags(cols_in, const u8[:, ::1] add, const u8[:, ::1] mul, const u8[:] neg, const u8[:] inv):
    cdef const u8[:, :] cols = np.ascontiguousarray(cols_in, dtype=np.uint8)
    cdef int k = cols.shape[0], n1 = cols.shape[1], n = n1 - 1
    flags = np.ones(1 << n, dtype=np.bool_)
    cdef cnp.uint8_t[:] fv = flags.view(np.uint8)
    cdef int j
    cdef bint any0 = False
    for j in range(k):
        if cols[j, 0]:
            any0 = True
    if not any0:
        return flags
    fv[0] = 0
    # per depth: basis rows (k x k), pivots, residual; depth d holds the state after d insertions
    cdef int depth_cap = n + 1
    cdef u8* basis = <u8*> malloc(depth_cap * k * k)
    cdef int* piv = <int*> malloc(depth_cap * k * sizeof(int))
    cdef int* nbasis = <int*> malloc(depth_cap * sizeof(int))
    cdef u8* resid = <u8*> malloc(depth_cap * k)
    cdef int* nxt = <int*> malloc(depth_cap * sizeof(int))
    cdef long* masks = <long*> malloc(depth_cap * sizeof(long))
    cdef u8* v = <u8*> malloc(k)
    cdef int depth, i, b, c, p, nb, t
    cdef bint nonzero
    cdef long m2
    try:
        with nogil:
            nbasis[0] = 0
            for j in range(k):
                resid[j] = cols[j, 0]
            nxt[0] = 0
            masks[0] = 0
            depth = 0
            while depth >= 0:
                i = nxt[depth]
                if i >= n:
                    depth -= 1
                    continue
                nxt[depth] = i + 1
                # reduce column i+1 by the basis at this depth
                for j in range(k):
                    v[j] = cols[j, i + 1]
                nb = nbasis[depth]
                for b in range(nb):
                    c = v[piv[depth * k + b]]
                    if c:
                        for j in range(k):
                            v[j] = add[v[j], mul[neg[c], basis[(depth * k + b) * k + j]]]
                # copy state to depth+1
                memcpy(&basis[(depth + 1) * k * k], &basis[depth * k * k], nb * k)
                memcpy(&piv[(depth + 1) * k], &piv[depth * k], nb * sizeof(int))
                memcpy(&resid[(depth + 1) * k], &resid[depth * k], k)
                p = -1
                for j in range(k):
                    if v[j]:
                        p = j
                        break
                if p >= 0:
                    t = inv[v[p]]
                    for j in range(k):
                        basis[((depth + 1) * k + nb) * k + j] = mul[t, v[j]]
                    piv[(depth + 1) * k + nb] = p
                    nb += 1
                    c = resid[(depth + 1) * k + p]
                    if c:
                        for j in range(k):
                            resid[(depth + 1) * k + j] = add[resid[(depth + 1) * k + j],
                                                             mul[neg[c], basis[((depth + 1) * k + nb - 1) * k + j]]]
                nbasis[depth + 1] = nb
                nonzero = False
                for j in range(k):
                    if resid[(depth + 1) * k + j]:
                        nonzero = True
                        break
                m2 = masks[depth] | ((<long>1) << i)
                if nonzero:
                    fv[m2] = 0
                    masks[depth + 1] = m2
                    nxt[depth + 1] = i + 1
                    depth += 1
    finally:
        free(basis); free(piv); free(nbasis); free(resid); free(nxt); free(masks); free(v)
    return flags
