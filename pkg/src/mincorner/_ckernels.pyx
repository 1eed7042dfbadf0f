# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dynamic-programming kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int16_t, uint8_t

cnp.import_array()

INF = np.int64(1) << np.int64(60)
cdef int64_t CINF = (<int64_t>1) << 60


cdef inline int64_t _pair(const int16_t* top, const int16_t* bot, Py_ssize_t n,
                          const int* colors, int ncol) noexcept nogil:
    # corners between two padded rows, one branch-free pass per counted color
    cdef int64_t s = 0
    cdef Py_ssize_t j
    cdef int c, v, t0, t1, b0, b1, idx
    for idx in range(ncol):
        c = colors[idx]
        t0 = 0
        b0 = 0
        for j in range(n + 1):
            if j < n:
                t1 = top[j] == c
                b1 = bot[j] == c
            else:
                t1 = 0
                b1 = 0
            v = t0 + b1 - t1 - b0
            s += v if v >= 0 else -v
            t0 = t1
            b0 = b1
    return s


def _colors(mask):
    """Counted colors as a C int array (never empty, so ``&cs[0]`` stays valid) and their number."""
    cs = np.flatnonzero(np.asarray(mask, dtype=np.uint8)[1:]).astype(np.intc) + 1
    return (cs if cs.size else np.zeros(1, dtype=np.intc)), int(cs.size)


def pair_corners(top, bottom, mask):
    cdef const int16_t[:, ::1] t = np.ascontiguousarray(top, dtype=np.int16)
    cdef const int16_t[:, ::1] b = np.ascontiguousarray(bottom, dtype=np.int16)
    colors, ncol_ = _colors(mask)
    cdef const int[::1] cs = colors
    cdef int ncol = ncol_
    cdef Py_ssize_t P = t.shape[0], Q = b.shape[0], n = t.shape[1]
    out = np.zeros((P, Q), dtype=np.int64)
    cdef int64_t[:, :] o = out
    cdef Py_ssize_t p, q
    with nogil:
        for p in range(P):
            for q in range(Q):
                o[p, q] = _pair(&t[p, 0], &b[q, 0], n, &cs[0], ncol)
    return out


def pair_min(prev_cost, prev_rows, cur_rows, mask):
    cdef const int64_t[:] pc = np.ascontiguousarray(prev_cost, dtype=np.int64)
    cdef const int16_t[:, ::1] t = np.ascontiguousarray(prev_rows, dtype=np.int16)
    cdef const int16_t[:, ::1] b = np.ascontiguousarray(cur_rows, dtype=np.int16)
    colors, ncol_ = _colors(mask)
    cdef const int[::1] cs = colors
    cdef int ncol = ncol_
    cdef Py_ssize_t P = t.shape[0], Q = b.shape[0], n = b.shape[1]
    best = np.full(Q, CINF, dtype=np.int64)
    arg = np.full(Q, -1, dtype=np.int64)
    cdef int64_t[:] bv = best
    cdef int64_t[:] av = arg
    cdef Py_ssize_t p, q
    cdef int64_t v, cur
    with nogil:
        for q in range(Q):
            cur = CINF
            for p in range(P):
                if pc[p] >= cur:
                    continue
                v = pc[p] + _pair(&t[p, 0], &b[q, 0], n, &cs[0], ncol)
                if v < cur:
                    cur = v
                    av[q] = p
            bv[q] = cur
    return best, arg


def sweep_step(old, cost):
    cdef const int64_t[:, :, :, :, :] o = np.ascontiguousarray(old, dtype=np.int64)
    cdef const int64_t[:, :, :, :] cs = np.ascontiguousarray(cost, dtype=np.int64)
    cdef Py_ssize_t L = o.shape[0], A = o.shape[1], B = o.shape[2]
    cdef Py_ssize_t C = o.shape[3], R = o.shape[4], D = cs.shape[3]
    new = np.empty((L, A, D, C, R), dtype=np.int64)
    cdef int64_t[:, :, :, :, :] nw = new
    cdef Py_ssize_t l, a, b, c, d, r
    cdef int64_t v, cur, base
    with nogil:
        for l in range(L):
            for a in range(A):
                for d in range(D):
                    for c in range(C):
                        for r in range(R):
                            cur = CINF
                            for b in range(B):
                                base = o[l, a, b, c, r]
                                if base >= cur:
                                    continue
                                v = base + cs[a, b, c, d]
                                if v < cur:
                                    cur = v
                            nw[l, a, d, c, r] = cur
    return new


def grid_corners(padded, mask):
    cdef const int16_t[:, ::1] g = np.ascontiguousarray(padded, dtype=np.int16)
    cdef const uint8_t[:] mk = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t i, j, m = g.shape[0], n = g.shape[1]
    cdef const int16_t* up
    cdef const int16_t* lo
    cdef int c, v
    cdef int64_t s = 0
    with nogil:
        for c in range(1, mk.shape[0]):
            if not mk[c]:
                continue
            for i in range(m - 1):
                up = &g[i, 0]
                lo = &g[i + 1, 0]
                for j in range(n - 1):
                    v = (up[j] == c) + (lo[j + 1] == c) - (up[j + 1] == c) - (lo[j] == c)
                    s += v if v >= 0 else -v
    return int(s)
