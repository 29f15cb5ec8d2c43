# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit-level kernels; see ``_pykernels`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport malloc, realloc, free

cnp.import_array()

NAME = "cython"


def fisher_yates(const int64_t[::1] swaps):
    cdef Py_ssize_t n = swaps.shape[0] + 1
    cdef cnp.ndarray[int64_t, ndim=1] perm = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] pv = perm
    cdef Py_ssize_t k, i, j
    cdef int64_t tmp
    for k in range(n - 1):
        i = n - 1 - k
        j = swaps[k]
        tmp = pv[i]
        pv[i] = pv[j]
        pv[j] = tmp
    return perm


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount64(uint64_t v) nogil:
    return __builtin_popcountll(v)


def _pack_words(bits, Py_ssize_t nwords):
    packed = np.packbits(bits, bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: packed.size] = packed
    return buf.view("<u8")


def toeplitz_hash(x, seed, Py_ssize_t out_len):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t nw = (n + 63) // 64
    cdef Py_ssize_t span = nw + (out_len + 63) // 64 + 1
    out = np.zeros(out_len, dtype=np.uint8)
    if out_len == 0:
        return out
    cdef uint8_t[::1] ov = out
    cdef const uint64_t[::1] xr = _pack_words(np.ascontiguousarray(x[::-1]), nw)
    cdef Py_ssize_t s, i, w, base
    cdef uint64_t acc
    cdef const uint64_t[::1] sh
    for s in range(min(64, out_len)):
        sh = _pack_words(seed[s:], span)
        i = s
        with nogil:
            while i < out_len:
                base = i // 64
                acc = 0
                for w in range(nw):
                    acc ^= sh[base + w] & xr[w]
                ov[i] = popcount64(acc) & 1
                i += 64
    return out


cdef struct Buf:
    int64_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int buf_push(Buf* bf, int64_t a, int64_t b, int64_t c, int64_t d) except -1:
    cdef int64_t* nd
    if bf.size + 4 > bf.cap:
        bf.cap = bf.cap * 2 + 64
        nd = <int64_t*> realloc(bf.data, bf.cap * sizeof(int64_t))
        if nd == NULL:
            raise MemoryError()
        bf.data = nd
    bf.data[bf.size] = a
    bf.data[bf.size + 1] = b
    bf.data[bf.size + 2] = c
    bf.data[bf.size + 3] = d
    bf.size += 4
    return 0


cdef inline int range_parity(const uint8_t[::1] bits, const int64_t[:, ::1] perms,
                             Py_ssize_t p, Py_ssize_t lo, Py_ssize_t hi) nogil:
    cdef int s = 0
    cdef Py_ssize_t t
    for t in range(lo, hi):
        s ^= bits[perms[p, t]]
    return s


def cascade(alice, bob, block_sizes, perms_in):
    cdef const uint8_t[::1] a = np.ascontiguousarray(alice, dtype=np.uint8)
    corrected = np.array(bob, dtype=np.uint8, copy=True)
    cdef uint8_t[::1] b = corrected
    cdef const int64_t[:, ::1] perms = np.ascontiguousarray(perms_in, dtype=np.int64)
    cdef const int64_t[::1] ks = np.ascontiguousarray(block_sizes, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t npass = ks.shape[0]
    cdef Py_ssize_t p, q, r, t, blk, qb, nb, lo, hi, mid, pos, head, k
    cdef int ap

    inv_arr = np.empty((npass, n), dtype=np.int64)
    cdef int64_t[:, ::1] inv = inv_arr
    for p in range(npass):
        for t in range(n):
            inv[p, perms[p, t]] = t

    # parity tables padded to the largest block count
    cdef Py_ssize_t maxb = (n + ks[0] - 1) // ks[0]
    for p in range(npass):
        nb = (n + ks[p] - 1) // ks[p]
        if nb > maxb:
            maxb = nb
    apar_arr = np.zeros((npass, maxb), dtype=np.uint8)
    bpar_arr = np.zeros((npass, maxb), dtype=np.uint8)
    cdef uint8_t[:, ::1] apar = apar_arr
    cdef uint8_t[:, ::1] bpar = bpar_arr

    cdef Buf msgs
    msgs.data = NULL
    msgs.size = 0
    msgs.cap = 0
    cdef Py_ssize_t qcap = 64
    cdef int64_t* queue = <int64_t*> malloc(2 * qcap * sizeof(int64_t))
    cdef int64_t* nq
    cdef Py_ssize_t qlen
    if queue == NULL:
        raise MemoryError()

    try:
        for p in range(npass):
            k = ks[p]
            nb = (n + k - 1) // k
            for blk in range(nb):
                lo = blk * k
                hi = lo + k
                if hi > n:
                    hi = n
                apar[p, blk] = range_parity(a, perms, p, lo, hi)
                bpar[p, blk] = range_parity(b, perms, p, lo, hi)
                buf_push(&msgs, p, lo, hi, apar[p, blk])
            for blk in range(nb):
                if apar[p, blk] == bpar[p, blk]:
                    continue
                queue[0] = p
                queue[1] = blk
                qlen = 1
                head = 0
                while head < qlen:
                    q = queue[2 * head]
                    qb = queue[2 * head + 1]
                    head += 1
                    if apar[q, qb] == bpar[q, qb]:
                        continue
                    lo = qb * ks[q]
                    hi = lo + ks[q]
                    if hi > n:
                        hi = n
                    while hi - lo > 1:
                        mid = (lo + hi) // 2
                        ap = range_parity(a, perms, q, lo, mid)
                        buf_push(&msgs, q, lo, mid, ap)
                        if ap != range_parity(b, perms, q, lo, mid):
                            hi = mid
                        else:
                            lo = mid
                    pos = perms[q, lo]
                    b[pos] ^= 1
                    for r in range(p + 1):
                        bpar[r, inv[r, pos] // ks[r]] ^= 1
                    for r in range(p + 1):
                        if r == q:
                            continue
                        if qlen >= qcap:
                            qcap *= 2
                            nq = <int64_t*> realloc(queue, 2 * qcap * sizeof(int64_t))
                            if nq == NULL:
                                raise MemoryError()
                            queue = nq
                        queue[2 * qlen] = r
                        queue[2 * qlen + 1] = inv[r, pos] // ks[r]
                        qlen += 1
        out = np.empty((msgs.size // 4, 4), dtype=np.int64)
        if msgs.size:
            out.ravel()[:] = <int64_t[:msgs.size]> msgs.data
        return corrected, out
    finally:
        free(queue)
        free(msgs.data)
