# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: component counting over vertex cuts and cyclic Jacobi.

Signatures mirror :mod:`spectough._pykernels` exactly.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil
    int __builtin_popcountll(unsigned long long x) nogil


cdef inline uint64_t _full_mask(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef int _components(const uint64_t[::1] adj, int n, uint64_t removed) nogil:
    cdef uint64_t remaining = _full_mask(n) & ~removed
    cdef uint64_t comp, frontier, nxt, f
    cdef int count = 0
    cdef int v
    while remaining:
        comp = remaining & (~remaining + 1)
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = __builtin_ctzll(f)
                f &= f - 1
                nxt |= adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        count += 1
    return count


def components(adj, int n, removed):
    cdef uint64_t[::1] a = np.ascontiguousarray(adj, dtype=np.uint64)
    return _components(a, n, <uint64_t>removed)


def scan_cuts(adj, int n, offsets, prefix):
    """Scan representative cut sets; see the pure-Python twin for semantics."""
    cdef uint64_t[::1] a = np.ascontiguousarray(adj, dtype=np.uint64)
    cdef int64_t[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef uint64_t[::1] pre = np.ascontiguousarray(prefix, dtype=np.uint64)
    cdef int k = off.shape[0] - 1
    cdef int64_t[::1] cnt = np.zeros(max(k, 1), dtype=np.int64)
    cdef int64_t[::1] size = np.zeros(max(k, 1), dtype=np.int64)
    cdef int i, c, rem, ssz
    cdef uint64_t S
    cdef bint found = False
    cdef long long best_s = 0, t_num = 0, t_den = 1, tau_num = 0, tau_den = 1
    cdef uint64_t s_mask = 0, t_mask = 0, tau_mask = 0
    cdef bint worse_s, worse_t, worse_tau
    for i in range(k):
        size[i] = off[i + 1] - off[i] - 1
    with nogil:
        while True:
            S = 0
            for i in range(k):
                S |= pre[off[i] + cnt[i]]
            ssz = __builtin_popcountll(S)
            rem = n - ssz
            if rem >= 2:
                if found:
                    worse_s = rem - ssz < best_s
                    worse_t = ssz * t_den > t_num * rem
                    worse_tau = ssz * tau_den > tau_num * (rem - 1)
                else:
                    worse_s = worse_t = worse_tau = False
                if not (worse_s and worse_t and worse_tau):
                    c = _components(a, n, S)
                    if c > 1:
                        if not found:
                            found = True
                            best_s = c - ssz
                            s_mask = S
                            t_num = ssz
                            t_den = c
                            t_mask = S
                            tau_num = ssz
                            tau_den = c - 1
                            tau_mask = S
                        else:
                            if c - ssz > best_s or (c - ssz == best_s and S < s_mask):
                                best_s = c - ssz
                                s_mask = S
                            if ssz * t_den < t_num * c or (ssz * t_den == t_num * c and S < t_mask):
                                t_num = ssz
                                t_den = c
                                t_mask = S
                            if ssz * tau_den < tau_num * (c - 1) or (
                                ssz * tau_den == tau_num * (c - 1) and S < tau_mask
                            ):
                                tau_num = ssz
                                tau_den = c - 1
                                tau_mask = S
            # mixed-radix increment
            i = 0
            while i < k:
                if cnt[i] < size[i]:
                    cnt[i] += 1
                    break
                cnt[i] = 0
                i += 1
            if i == k:
                break
    return (bool(found), best_s, int(s_mask), t_num, t_den, int(t_mask),
            tau_num, tau_den, int(tau_mask))


def jacobi_eigh(m, double tol=1e-10, int max_sweeps=100):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps, off_norm)``; eigenvectors are
    columns. Convergence is declared when the off-diagonal Frobenius norm drops
    below ``tol * max(1, ||M||_F)``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.array(m, dtype=np.float64, order="C")
    cdef int n = A.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = A
    cdef double[:, ::1] v = V
    cdef int p, q, r, sweeps = 0
    cdef double off, scale, theta, t, c, s, apq, x, y
    scale = 0.0
    for p in range(n):
        for q in range(n):
            scale += a[p, q] * a[p, q]
    scale = sqrt(scale)
    if scale < 1.0:
        scale = 1.0
    with nogil:
        while True:
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    off += 2.0 * a[p, q] * a[p, q]
            off = sqrt(off)
            if off <= tol * scale or sweeps >= max_sweeps:
                break
            sweeps += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if fabs(apq) < 1e-300:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if theta >= 0:
                        t = 1.0 / (theta + sqrt(1.0 + theta * theta))
                    else:
                        t = -1.0 / (-theta + sqrt(1.0 + theta * theta))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    for r in range(n):
                        x = a[r, p]
                        y = a[r, q]
                        a[r, p] = c * x - s * y
                        a[r, q] = s * x + c * y
                    for r in range(n):
                        x = a[p, r]
                        y = a[q, r]
                        a[p, r] = c * x - s * y
                        a[q, r] = s * x + c * y
                    for r in range(n):
                        x = v[r, p]
                        y = v[r, q]
                        v[r, p] = c * x - s * y
                        v[r, q] = s * x + c * y
    return np.diag(A).copy(), V, sweeps, off
