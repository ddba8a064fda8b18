"""Compiled enumeration loops.

Codewords are held as little-endian arrays of uint64 words over the full
length. Every generator handed to these kernels is systematic on some
information set, so the message weight is the weight of the codeword on that
set and equals the subset depth during enumeration.
"""

import numba as nb
import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)

BIG = 1 << 30


@nb.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@nb.njit(cache=True, inline="always")
def _wt(acc):
    s = 0
    for w in range(acc.shape[0]):
        s += _popcount(acc[w])
    return s


@nb.njit(cache=True)
def gray_counts(rows, hbits, c_lo, c_hi, counts):
    """Add the weights of all messages whose top ``hbits`` bits lie in [c_lo, c_hi).

    The low ``k - hbits`` message bits are walked in Gray order so each step
    costs one row XOR.
    """
    k, W = rows.shape
    kl = k - hbits
    acc = np.zeros(W, np.uint64)
    nlow = np.int64(1) << kl
    for c in range(c_lo, c_hi):
        for w in range(W):
            acc[w] = _ZERO
        for b in range(hbits):
            if (c >> b) & 1:
                for w in range(W):
                    acc[w] ^= rows[kl + b, w]
        counts[_wt(acc)] += 1
        for i in range(1, nlow):
            b = 0
            while not (i >> b) & 1:
                b += 1
            for w in range(W):
                acc[w] ^= rows[b, w]
            counts[_wt(acc)] += 1


@nb.njit(cache=True, inline="always")
def _accept(acc, tot, wmax, mask, thr):
    """Weight within budget and, if ``thr >= 0``, weight on ``mask`` above ``thr``."""
    if tot > wmax:
        return False
    if thr < 0:
        return True
    s = 0
    for w in range(acc.shape[0]):
        s += _popcount(acc[w] & mask[w])
    return s > thr


@nb.njit(cache=True)
def subset_counts(rows, maxdepth, wmax, mask, thr, firsts, counts):
    """Count codewords from nonempty messages of weight <= maxdepth.

    Only subsets whose smallest index is in ``firsts`` are visited, which is how
    the work is partitioned. With ``thr >= 0`` a codeword is counted only when
    its weight on the columns in ``mask`` exceeds ``thr`` (it was not already
    reached by an earlier pass).
    """
    k, W = rows.shape
    if maxdepth <= 0:
        return
    idx = np.zeros(maxdepth + 1, np.int64)
    accs = np.zeros((maxdepth + 1, W), np.uint64)
    for t in range(firsts.shape[0]):
        f = firsts[t]
        d = 1
        idx[1] = f
        for w in range(W):
            accs[1, w] = rows[f, w]
        tot = _wt(accs[1])
        if _accept(accs[1], tot, wmax, mask, thr):
            counts[tot] += 1
        nxt = f + 1
        while True:
            if d < maxdepth and nxt < k:
                idx[d + 1] = nxt
                for w in range(W):
                    accs[d + 1, w] = accs[d, w] ^ rows[nxt, w]
                d += 1
                tot = _wt(accs[d])
                if _accept(accs[d], tot, wmax, mask, thr):
                    counts[tot] += 1
                nxt = nxt + 1
            else:
                if d == 1:
                    break
                nxt = idx[d] + 1
                d -= 1


@nb.njit(cache=True)
def subset_collect(rows, maxdepth, wmax, mask, thr, out, start):
    """Like ``subset_counts`` but writes accepted codewords into ``out``.

    Returns the next free slot; ``out`` must be large enough.
    """
    k, W = rows.shape
    pos = start
    if maxdepth <= 0:
        return pos
    idx = np.zeros(maxdepth + 1, np.int64)
    accs = np.zeros((maxdepth + 1, W), np.uint64)
    for f in range(k):
        d = 1
        idx[1] = f
        for w in range(W):
            accs[1, w] = rows[f, w]
        tot = _wt(accs[1])
        if _accept(accs[1], tot, wmax, mask, thr):
            for w in range(W):
                out[pos, w] = accs[1, w]
            pos += 1
        nxt = f + 1
        while True:
            if d < maxdepth and nxt < k:
                idx[d + 1] = nxt
                for w in range(W):
                    accs[d + 1, w] = accs[d, w] ^ rows[nxt, w]
                d += 1
                tot = _wt(accs[d])
                if _accept(accs[d], tot, wmax, mask, thr):
                    for w in range(W):
                        out[pos, w] = accs[d, w]
                    pos += 1
                nxt = nxt + 1
            else:
                if d == 1:
                    break
                nxt = idx[d] + 1
                d -= 1
    return pos


@nb.njit(cache=True)
def _level_min(rows, L, best):
    """Smallest codeword weight over messages of weight exactly ``L``."""
    k, W = rows.shape
    if L > k:
        return best
    idx = np.zeros(L + 1, np.int64)
    accs = np.zeros((L + 1, W), np.uint64)
    d = 0
    nxt = 0
    while True:
        if d < L and nxt < k:
            idx[d + 1] = nxt
            if d == 0:
                for w in range(W):
                    accs[1, w] = rows[nxt, w]
            else:
                for w in range(W):
                    accs[d + 1, w] = accs[d, w] ^ rows[nxt, w]
            d += 1
            if d == L:
                tot = _wt(accs[d])
                if tot < best:
                    best = tot
            nxt = nxt + 1
        else:
            if d == 0:
                break
            nxt = idx[d] + 1
            d -= 1
    return best


@nb.njit(cache=True)
def min_weight_levels(rows1, rows2, split, overlap, abort_below, cap):
    """Minimum nonzero weight, walking message weights level by level.

    With ``split`` the second generator is systematic on an information set
    sharing ``overlap`` columns with the first, so after level L every unseen
    codeword has weight at least 2(L+1) - overlap. Returns early with any
    weight < ``abort_below``; returns ``cap + 1`` when the minimum provably
    exceeds ``cap``.
    """
    k = rows1.shape[0]
    best = BIG
    for L in range(1, k + 1):
        best = _level_min(rows1, L, best)
        if split:
            best = _level_min(rows2, L, best)
        if best < abort_below:
            return best
        lb = L + 1
        if split and 2 * (L + 1) - overlap > lb:
            lb = 2 * (L + 1) - overlap
        if best <= lb:
            return best
        if lb > cap:
            return cap + 1
    return best


@nb.njit(cache=True, inline="always")
def _rot(p, s, L, mask):
    if s == 0:
        return p
    return ((p << np.uint64(s)) | (p >> np.uint64(L - s))) & mask


@nb.njit(cache=True)
def dcc_right_rows(row, n, bordered, alpha, out):
    """Rows of the n x n block right of I_n, as bit masks (n <= 63)."""
    if not bordered:
        mask = (_ONE << np.uint64(n)) - _ONE
        for i in range(n):
            out[i] = _rot(row, i, n, mask)
    else:
        L = n - 1
        mask = (_ONE << np.uint64(L)) - _ONE
        out[0] = np.uint64(alpha) | (mask << _ONE)
        for i in range(L):
            out[i + 1] = _ONE | (_rot(row, i, L, mask) << _ONE)


@nb.njit(cache=True)
def gf2_inverse(m, n, inv):
    """Invert the n x n matrix with row masks ``m`` into ``inv``; False if singular."""
    a = m.copy()
    for i in range(n):
        inv[i] = _ONE << np.uint64(i)
    for c in range(n):
        bit = _ONE << np.uint64(c)
        sel = -1
        for r in range(c, n):
            if a[r] & bit:
                sel = r
                break
        if sel < 0:
            return False
        if sel != c:
            t = a[c]
            a[c] = a[sel]
            a[sel] = t
            t = inv[c]
            inv[c] = inv[sel]
            inv[sel] = t
        for r in range(n):
            if r != c and (a[r] & bit):
                a[r] ^= a[c]
                inv[r] ^= inv[c]
    return True


@nb.njit(cache=True)
def _is_orthogonal(m, n):
    for i in range(n):
        for j in range(i, n):
            p = _popcount(m[i] & m[j]) & 1
            if i == j:
                if p != 1:
                    return False
            elif p != 0:
                return False
    return True


@nb.njit(cache=True)
def dcc_batch_screen(cands, n, bordered, alpha, start_best, out_d, out_sd):
    """Minimum weights of many double circulant codes (2n <= 64).

    Self-dual codes are flagged in ``out_sd`` and do not raise the running
    best. A code whose weight falls below the running best is abandoned, so
    its entry is only an upper bound; entries equal to the final best are
    exact.
    """
    m = np.zeros(n, np.uint64)
    inv = np.zeros(n, np.uint64)
    rows1 = np.zeros((n, 1), np.uint64)
    rows2 = np.zeros((n, 1), np.uint64)
    sh = np.uint64(n)
    best = start_best
    for t in range(cands.shape[0]):
        dcc_right_rows(np.uint64(cands[t]), n, bordered, alpha, m)
        sd = _is_orthogonal(m, n)
        out_sd[t] = sd
        for i in range(n):
            rows1[i, 0] = (_ONE << np.uint64(i)) | (m[i] << sh)
        split = gf2_inverse(m, n, inv)
        if split:
            for i in range(n):
                rows2[i, 0] = inv[i] | (_ONE << np.uint64(n + i))
        thr = 0 if sd else best
        d = min_weight_levels(rows1, rows2, split, 0, thr, 2 * n)
        out_d[t] = d
        if not sd and d > best:
            best = d
    return best
