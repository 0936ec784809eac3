"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and return values; used when the extension is not built or
when ``SPECTOUGH_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import math

import numpy as np


def _as_ints(adj) -> list[int]:
    return [int(x) for x in adj]


def _components(adj: list[int], n: int, removed: int) -> int:
    remaining = ((1 << n) - 1) & ~removed
    count = 0
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        count += 1
    return count


def components(adj, n: int, removed: int) -> int:
    return _components(_as_ints(adj), n, int(removed))


def scan_cuts(adj, n: int, offsets, prefix):
    """Scan the cut sets ``S`` built from per-class prefix masks.

    ``prefix[offsets[i] + j]`` is the mask of the first ``j`` vertices of
    class ``i``. Every combination of prefixes is visited once. Returns
    ``(found, s, s_mask, t_num, t_den, t_mask, tau_num, tau_den, tau_mask)``
    where ``found`` says whether any ``S`` left more than one component.
    Ties go to the numerically smallest mask.
    """
    a = _as_ints(adj)
    off = [int(x) for x in offsets]
    pre = [int(x) for x in prefix]
    k = len(off) - 1
    size = [off[i + 1] - off[i] - 1 for i in range(k)]
    cnt = [0] * k
    found = False
    best_s = t_num = tau_num = 0
    t_den = tau_den = 1
    s_mask = t_mask = tau_mask = 0
    while True:
        S = 0
        for i in range(k):
            S |= pre[off[i] + cnt[i]]
        ssz = bin(S).count("1")
        rem = n - ssz
        if rem >= 2:
            skip = (
                found
                and rem - ssz < best_s
                and ssz * t_den > t_num * rem
                and ssz * tau_den > tau_num * (rem - 1)
            )
            if not skip:
                c = _components(a, n, S)
                if c > 1:
                    if not found:
                        found = True
                        best_s, s_mask = c - ssz, S
                        t_num, t_den, t_mask = ssz, c, S
                        tau_num, tau_den, tau_mask = ssz, c - 1, S
                    else:
                        if c - ssz > best_s or (c - ssz == best_s and S < s_mask):
                            best_s, s_mask = c - ssz, S
                        lhs, rhs = ssz * t_den, t_num * c
                        if lhs < rhs or (lhs == rhs and S < t_mask):
                            t_num, t_den, t_mask = ssz, c, S
                        lhs, rhs = ssz * tau_den, tau_num * (c - 1)
                        if lhs < rhs or (lhs == rhs and S < tau_mask):
                            tau_num, tau_den, tau_mask = ssz, c - 1, S
        i = 0
        while i < k:
            if cnt[i] < size[i]:
                cnt[i] += 1
                break
            cnt[i] = 0
            i += 1
        if i == k:
            break
    return (found, best_s, s_mask, t_num, t_den, t_mask, tau_num, tau_den, tau_mask)


def jacobi_eigh(m, tol: float = 1e-10, max_sweeps: int = 100):
    A = np.array(m, dtype=np.float64)
    n = A.shape[0]
    V = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(A)))
    sweeps = 0
    while True:
        off = math.sqrt(2.0 * float(np.sum(np.triu(A, 1) ** 2)))
        if off <= tol * scale or sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta >= 0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp, colq = A[:, p].copy(), A[:, q]
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp, rowq = A[p, :].copy(), A[q, :]
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                vp, vq = V[:, p].copy(), V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    return np.diag(A).copy(), V, sweeps, off
