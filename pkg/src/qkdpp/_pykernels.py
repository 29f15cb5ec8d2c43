"""Pure-Python/numpy versions of the bit-level kernels.

Outputs are bit-identical to the compiled module ``_ckernels``; the
backend is chosen in ``kernels``.
"""

import numpy as np

NAME = "python"


def fisher_yates(swaps: np.ndarray) -> np.ndarray:
    """Permutation built by swapping slot i with ``swaps[n-1-i]`` for i = n-1 .. 1."""
    n = len(swaps) + 1
    perm = list(range(n))
    for k, j in enumerate(swaps.tolist()):
        i = n - 1 - k
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.int64)


def _pack_words(bits: np.ndarray, nwords: int) -> np.ndarray:
    packed = np.packbits(bits, bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: packed.size] = packed
    return buf.view("<u8")


def toeplitz_hash(x: np.ndarray, seed: np.ndarray, out_len: int) -> np.ndarray:
    """out[i] = XOR_j seed[i - j + n - 1] & x[j], via packed 64-bit windows."""
    n = x.size
    if out_len == 0:
        return np.zeros(0, dtype=np.uint8)
    nw = (n + 63) // 64
    xr = _pack_words(x[::-1], nw)
    span = nw + (out_len + 63) // 64 + 1
    out = np.empty(out_len, dtype=np.uint8)
    for s in range(min(64, out_len)):
        # seed bits shifted left by s, then row i = s + 64 t reads words t .. t + nw - 1
        shifted = _pack_words(seed[s:], span)
        rows = np.arange(s, out_len, 64)
        windows = np.lib.stride_tricks.sliding_window_view(shifted, nw)[rows // 64]
        out[rows] = np.bitwise_count(windows & xr).sum(axis=1) & 1
    return out


def cascade(alice: np.ndarray, bob: np.ndarray, block_sizes: np.ndarray, perms: np.ndarray):
    """Cascade with full backtracking.

    ``perms[p]`` maps permuted position to key index in pass ``p``. Returns
    the corrected copy of ``bob`` and an (M, 4) int64 array of disclosed
    parities ``(pass, start, stop, parity)`` in permuted coordinates.
    """
    n = alice.size
    npass = len(block_sizes)
    b = bob.astype(np.uint8).copy()
    a_arr = alice.astype(np.uint8)
    msgs = []
    inv = np.empty_like(perms)
    for p in range(npass):
        inv[p, perms[p]] = np.arange(n)
    inv_l = inv.tolist()
    perm_l = perms.tolist()
    ks = [int(k) for k in block_sizes]
    a_par = []
    b_par = []

    def parity(bits, p, lo, hi):
        return int(bits[perms[p, lo:hi]].sum()) & 1

    def flip(pos, upto):
        b[pos] ^= 1
        for q in range(upto + 1):
            b_par[q][inv_l[q][pos] // ks[q]] ^= 1

    def bisect(p, blk, upto):
        lo = blk * ks[p]
        hi = min(lo + ks[p], n)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            ap = parity(a_arr, p, lo, mid)
            msgs.append((p, lo, mid, ap))
            if ap != parity(b, p, lo, mid):
                hi = mid
            else:
                lo = mid
        pos = perm_l[p][lo]
        flip(pos, upto)
        return pos

    for p in range(npass):
        k = ks[p]
        starts = np.arange(0, n, k)
        ap = np.add.reduceat(alice[perms[p]], starts) & 1
        bp = np.add.reduceat(b[perms[p]], starts) & 1
        a_par.append(ap.astype(np.uint8).tolist())
        b_par.append(bp.astype(np.uint8).tolist())
        for blk, st in enumerate(starts.tolist()):
            msgs.append((p, st, min(st + k, n), a_par[p][blk]))
        for blk in range(len(starts)):
            if a_par[p][blk] == b_par[p][blk]:
                continue
            queue = [(p, blk)]
            head = 0
            while head < len(queue):
                q, qb = queue[head]
                head += 1
                if a_par[q][qb] == b_par[q][qb]:
                    continue
                pos = bisect(q, qb, p)
                for r in range(p + 1):
                    if r != q:
                        queue.append((r, inv_l[r][pos] // ks[r]))
    out = np.array(msgs, dtype=np.int64).reshape(-1, 4)
    return b, out
