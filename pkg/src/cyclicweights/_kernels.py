"""Compiled inner loops.

Every kernel works on int64 arrays holding residues mod p.  ``inv`` is the
table of inverses mod p (``inv[0]`` unused), ``leg_idx`` maps a residue to
0 (square) or 1 (non-square), and ``md`` is the residue table built by
``mod_table``.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def mod_table(p: int) -> np.ndarray:
    """``md[x + 2p^2] == x % p`` for ``-2p^2 <= x < 2p^2``."""
    off = 2 * p * p
    return (np.arange(-off, off, dtype=np.int64) % p).astype(np.int64)


@njit(cache=True, nogil=True)
def congruence_diag(A, M, p, inv, md, track):
    """Diagonalise the symmetric matrix ``A`` by congruence, in place.

    On return ``A`` is diagonal with its nonzero entries first and, when
    ``track`` is set, ``M @ A_in @ M.T == A`` (mod p) for the ``M`` passed in
    as the identity.  Returns the rank.  ``md[x + OFF]`` is ``x mod p`` for
    ``-OFF <= x < OFF`` with ``OFF = 2 p^2`` (cheaper than integer division).
    """
    off = md.shape[0] // 2
    m = A.shape[0]
    r = 0
    for k in range(m):
        piv = -1
        for i in range(k, m):
            if A[i, i] != 0:
                piv = i
                break
        if piv < 0:
            fi = -1
            fj = -1
            for i in range(k, m):
                for j in range(i + 1, m):
                    if A[i, j] != 0:
                        fi = i
                        fj = j
                        break
                if fi >= 0:
                    break
            if fi < 0:
                break
            # new A[fi, fi] = 2 A[fi, fj] != 0 because p is odd
            for t in range(m):
                A[fi, t] = md[A[fi, t] + A[fj, t] + off]
            for t in range(m):
                A[t, fi] = md[A[t, fi] + A[t, fj] + off]
            if track:
                for t in range(m):
                    M[fi, t] = md[M[fi, t] + M[fj, t] + off]
            piv = fi
        if piv != k:
            for t in range(m):
                tmp = A[piv, t]
                A[piv, t] = A[k, t]
                A[k, t] = tmp
            for t in range(m):
                tmp = A[t, piv]
                A[t, piv] = A[t, k]
                A[t, k] = tmp
            if track:
                for t in range(m):
                    tmp = M[piv, t]
                    M[piv, t] = M[k, t]
                    M[k, t] = tmp
        dinv = inv[A[k, k]]
        for i in range(k + 1, m):
            if A[i, k] != 0:
                f = md[A[i, k] * dinv + off]
                for t in range(m):
                    A[i, t] = md[A[i, t] - f * A[k, t] + off]
                for t in range(m):
                    A[t, i] = md[A[t, i] - f * A[t, k] + off]
                if track:
                    for t in range(m):
                        M[i, t] = md[M[i, t] - f * M[k, t] + off]
        r += 1
    return r


@njit(cache=True, nogil=True)
def _diag_class(A, dummy, p, inv, md, leg_idx):
    r = congruence_diag(A, dummy, p, inv, md, False)
    prod = 1
    for k in range(r):
        prod = (prod * A[k, k]) % p
    return r, leg_idx[prod]


@njit(cache=True, nogil=True)
def census_shard(HA, HB, HG, a_lo, a_hi, p, inv, md, leg_idx, counts):
    """Classify every (a, b, c) with a in [a_lo, a_hi), skipping (0, 0, 0).

    ``HA[a] + HB[b] + HG[c]`` is the Gram matrix of the triple; ``counts``
    has shape (m + 1, 2) and is indexed by (rank, Legendre class of Delta).
    """
    off = md.shape[0] // 2
    q = HB.shape[0]
    m = HB.shape[1]
    AB = np.empty((m, m), dtype=np.int64)
    A = np.empty((m, m), dtype=np.int64)
    dummy = np.empty((1, 1), dtype=np.int64)
    for a in range(a_lo, a_hi):
        for b in range(q):
            for i in range(m):
                for j in range(m):
                    AB[i, j] = HA[a, i, j] + HB[b, i, j] + off
            c0 = 1 if (a == 0 and b == 0) else 0
            for c in range(c0, q):
                for i in range(m):
                    for j in range(m):
                        A[i, j] = md[AB[i, j] + HG[c, i, j]]
                r, li = _diag_class(A, dummy, p, inv, md, leg_idx)
                counts[r, li] += 1


@njit(cache=True, nogil=True)
def classify_batch(H, p, inv, md, leg_idx, ranks, legs):
    """Classify a stack of symmetric matrices with entries in [0, p)."""
    m = H.shape[1]
    A = np.empty((m, m), dtype=np.int64)
    dummy = np.empty((1, 1), dtype=np.int64)
    for n in range(H.shape[0]):
        for i in range(m):
            for j in range(m):
                A[i, j] = H[n, i, j]
        r, li = _diag_class(A, dummy, p, inv, md, leg_idx)
        ranks[n] = r
        legs[n] = li


@njit(cache=True, nogil=True)
def weight_shard(V0, V1, V2, a_lo, a_hi, p, counts):
    """Hamming-weight histogram of V0[a] + V1[b] + V2[c] over a in [a_lo, a_hi).

    Each V holds one trace component of the codeword for every field element;
    entries are residues, so a position sum lies in [0, 3p - 3].
    """
    q = V1.shape[0]
    n = V1.shape[1]
    nz = np.ones(3 * p, dtype=np.int64)
    for s in range(0, 3 * p, p):
        nz[s] = 0
    ab = np.empty(n, dtype=np.int64)
    for a in range(a_lo, a_hi):
        for b in range(q):
            for i in range(n):
                ab[i] = V0[a, i] + V1[b, i]
            for c in range(q):
                w = 0
                for i in range(n):
                    w += nz[ab[i] + V2[c, i]]
                counts[w] += 1


@njit(cache=True, nogil=True)
def shift_shard(HA, HB, HG, LIN, a_lo, a_hi, p, inv, md, leg_idx, counts):
    """Exhaustive four-variable tally behind the S' multiplicity table.

    For every (a, b, c) != 0 in the shard and every delta, counts[rank,
    leg, k] is incremented where k = 0 means 2YH + A = 0 is unsolvable and
    k = 1 + c otherwise.  ``LIN[d]`` is the coefficient row A of
    x -> Tr(d x).
    """
    off = md.shape[0] // 2
    q = HB.shape[0]
    m = HB.shape[1]
    A = np.empty((m, m), dtype=np.int64)
    M = np.empty((m, m), dtype=np.int64)
    ap = np.empty(m, dtype=np.int64)
    hinv = np.empty(m, dtype=np.int64)
    for a in range(a_lo, a_hi):
        for b in range(q):
            c0 = 1 if (a == 0 and b == 0) else 0
            for c in range(c0, q):
                for i in range(m):
                    for j in range(m):
                        A[i, j] = md[HA[a, i, j] + HB[b, i, j] + HG[c, i, j] + off]
                        M[i, j] = 1 if i == j else 0
                r = congruence_diag(A, M, p, inv, md, True)
                prod = 1
                for k in range(r):
                    prod = (prod * A[k, k]) % p
                    hinv[k] = inv[A[k, k]]
                li = leg_idx[prod]
                for d in range(q):
                    for i in range(m):
                        s = 0
                        for j in range(m):
                            s += LIN[d, j] * M[i, j]
                        ap[i] = (-s) % p
                    ok = True
                    for i in range(r, m):
                        if ap[i] != 0:
                            ok = False
                            break
                    if not ok:
                        counts[r, li, 0] += 1
                        continue
                    cc = 0
                    for i in range(r):
                        cc += ap[i] * ap[i] * hinv[i]
                    counts[r, li, 1 + (-cc) % p] += 1
