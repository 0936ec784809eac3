"""A_alpha matrices, their largest eigenvalue, and quotient matrices over vertex partitions."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from spectough import kernels
from spectough.graph import Graph, members

EQUITABLE_TOL = 1e-12
CHARPOLY_MAX_DIM = 16


class ConvergenceError(RuntimeError):
    pass


class ReducibleMatrixError(ValueError):
    """Power iteration needs an irreducible matrix (a connected graph)."""


def as_fraction(alpha) -> Fraction:
    """Exact value of ``alpha``; strings such as ``"1/2"`` or ``"0.1"`` parse exactly."""
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, str):
        return Fraction(alpha.strip())
    if isinstance(alpha, (int, np.integer)):
        return Fraction(int(alpha))
    return Fraction(float(alpha))


def _check_alpha(alpha) -> float:
    a = as_fraction(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return float(a)


@dataclass
class SpectralResult:
    radius: float
    vector: np.ndarray
    residual: float
    iterations: int


def a_alpha(g: Graph, alpha) -> np.ndarray:
    """``alpha * D + (1 - alpha) * A`` as a dense symmetric array."""
    a = _check_alpha(alpha)
    A = g.adjacency_matrix()
    return a * np.diag(A.sum(axis=1)) + (1.0 - a) * A


def _check_symmetric(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not symmetric")
    return M


def _perron_sign(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    return -v if v.sum() < 0 else v


def spectral_radius(M, tol: float = 1e-10, max_sweeps: int = 100) -> SpectralResult:
    """Largest eigenvalue and a unit eigenvector of a symmetric matrix (cyclic Jacobi).

    ``iterations`` counts Jacobi sweeps. The vector is sign-normalised to a
    non-negative sum; for a connected graph's A_alpha it is the Perron vector.
    """
    M = _check_symmetric(M)
    w, V, sweeps, off = kernels.jacobi_eigh(M, tol, max_sweeps)
    if off > tol * max(1.0, float(np.linalg.norm(M))):
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3g})")
    i = int(np.argmax(w))
    v = _perron_sign(V[:, i])
    rho = float(w[i])
    residual = float(np.max(np.abs(M @ v - rho * v)))
    return SpectralResult(rho, v, residual, sweeps)


def _is_irreducible(M: np.ndarray) -> bool:
    n = M.shape[0]
    reach = {0}
    stack = [0]
    nz = M != 0
    while stack:
        u = stack.pop()
        for v in np.nonzero(nz[u])[0]:
            if v not in reach:
                reach.add(int(v))
                stack.append(int(v))
    return len(reach) == n


def power_iteration(M, tol: float = 1e-11, max_iter: int = 500_000) -> SpectralResult:
    """Shifted power iteration with Rayleigh-quotient estimates.

    Iterates with ``M + I`` so bipartite graphs converge. Stops when
    ``||M v - rho v||_inf <= tol``.
    """
    M = _check_symmetric(M)
    if np.any(M < 0):
        raise ValueError("power iteration expects a non-negative matrix")
    if not _is_irreducible(M):
        raise ReducibleMatrixError("matrix is reducible (graph is disconnected)")
    n = M.shape[0]
    shifted = M + np.eye(n)
    v = np.full(n, 1.0 / np.sqrt(n))
    rho = float(v @ M @ v)
    residual = np.inf
    for it in range(1, max_iter + 1):
        w = shifted @ v
        v = w / np.linalg.norm(w)
        Mv = M @ v
        rho = float(v @ Mv)
        residual = float(np.max(np.abs(Mv - rho * v)))
        if residual <= tol:
            return SpectralResult(rho, v, residual, it)
    raise ConvergenceError(f"power iteration stalled at residual {residual:.3g} after {max_iter} steps")


def rho(g: Graph, alpha) -> float:
    """A_alpha spectral radius of ``g``."""
    return spectral_radius(a_alpha(g, alpha)).radius


# ----------------------------------------------------------------- quotients

@dataclass
class QuotientMatrix:
    entries: np.ndarray
    sizes: tuple[int, ...]
    equitable_flags: np.ndarray
    blocks: tuple[int, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_equitable(self) -> bool:
        return bool(self.equitable_flags.all())

    def to_csv(self) -> str:
        return matrix_csv(self.entries)


def matrix_csv(M: np.ndarray) -> str:
    buf = io.StringIO()
    for row in np.atleast_2d(M):
        buf.write(",".join(f"{float(x):.17g}" for x in row) + "\n")
    return buf.getvalue()


def _validate_partition(blocks: Sequence[int], dim: int) -> None:
    seen = 0
    for b in blocks:
        if b == 0:
            raise ValueError("partition has an empty block")
        if b & seen:
            raise ValueError("partition blocks overlap")
        seen |= b
    if seen != (1 << dim) - 1:
        raise ValueError("partition does not cover every index")


def quotient(M, blocks: Sequence[int]) -> QuotientMatrix:
    """Block-average row sums of ``M`` over the partition ``blocks`` (index bitmasks)."""
    M = np.asarray(M, dtype=float)
    _validate_partition(blocks, M.shape[0])
    idx = [members(b) for b in blocks]
    k = len(idx)
    B = np.zeros((k, k))
    flags = np.zeros((k, k), dtype=bool)
    for i, rows in enumerate(idx):
        for j, cols in enumerate(idx):
            sums = M[np.ix_(rows, cols)].sum(axis=1)
            B[i, j] = sums.mean()
            flags[i, j] = bool(np.ptp(sums) <= EQUITABLE_TOL)
    return QuotientMatrix(B, tuple(len(r) for r in idx), flags, tuple(blocks))


def _above_perron_root(B: np.ndarray, x: float) -> bool:
    # x*I - B is a Z-matrix; it is a nonsingular M-matrix, i.e. x > rho(B),
    # iff every leading principal minor is positive (all elimination pivots > 0).
    Z = x * np.eye(B.shape[0]) - B
    k = Z.shape[0]
    for j in range(k):
        piv = Z[j, j]
        if not piv > 0:
            return False
        if j + 1 < k:
            Z[j + 1 :, j + 1 :] -= np.outer(Z[j + 1 :, j], Z[j, j + 1 :]) / piv
    return True


def quotient_eigen_largest(Q: QuotientMatrix | np.ndarray, tol: float = 1e-14) -> float:
    """Perron root of a non-negative equitable quotient matrix, by bisection.

    The bracket is ``[min row sum - 1, max row sum + 1]``; the predicate is the
    sign structure of the leading principal minors of ``x I - B``.
    """
    if isinstance(Q, QuotientMatrix):
        if not Q.is_equitable:
            raise ValueError("quotient matrix is not equitable")
        B = Q.entries
    else:
        B = np.asarray(Q, dtype=float)
    if np.any(B < 0):
        raise ValueError("quotient matrix has negative entries")
    rows = B.sum(axis=1)
    lo, hi = float(rows.min()) - 1.0, float(rows.max()) + 1.0
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _above_perron_root(B, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def charpoly(Q: QuotientMatrix | np.ndarray) -> list[float]:
    """Monic characteristic polynomial coefficients, highest degree first (Faddeev-LeVerrier)."""
    B = Q.entries if isinstance(Q, QuotientMatrix) else np.asarray(Q, dtype=float)
    k = B.shape[0]
    if k > CHARPOLY_MAX_DIM:
        raise ValueError(f"charpoly supports dimension <= {CHARPOLY_MAX_DIM}")
    coeffs = [1.0]
    Mk = np.zeros_like(B)
    c = 1.0
    for j in range(1, k + 1):
        Mk = B @ Mk + c * np.eye(k)
        c = -float(np.trace(B @ Mk)) / j
        coeffs.append(c)
    return coeffs


def polyval(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def split_join_charpoly(s: int, parts: Sequence[int], alpha, x: float) -> float:
    """Characteristic polynomial of the join-of-cliques quotient, evaluated at ``x``.

    For ``K_s v (K_{n_1} u ... u K_{n_t})`` the quotient is an arrowhead
    matrix with corner ``n*alpha - s*alpha + s - 1`` and diagonal
    ``s*alpha + n_j - 1``; expanding the determinant gives
    ``(x - corner) * prod_j d_j - s (1-alpha)^2 * sum_i n_i prod_{j != i} d_j``
    with ``d_j = x - s*alpha - n_j + 1``.
    """
    if s < 1:
        raise ValueError("the join part must be non-empty (s >= 1)")
    if not parts:
        raise ValueError("parts must be non-empty")
    a = float(as_fraction(alpha))
    n = s + sum(parts)
    d = [x - s * a - nj + 1 for nj in parts]
    head = x - n * a + s * a - s + 1
    total = head * float(np.prod(d))
    acc = 0.0
    for i, ni in enumerate(parts):
        acc += ni * float(np.prod(d[:i] + d[i + 1 :]))
    return total - s * (1 - a) ** 2 * acc


def edge_bound(n: int, m: int, alpha) -> float:
    """Upper bound ``2m(1-alpha)/(n-1) + alpha*n - 1`` on rho_alpha for alpha in [1/2, 1]."""
    a = as_fraction(alpha)
    if not Fraction(1, 2) <= a <= 1:
        raise ValueError("edge bound needs alpha in [1/2, 1]")
    if n < 2 or m < 1:
        raise ValueError("edge bound needs n >= 2 and m >= 1")
    return float(Fraction(2 * m) * (1 - a) / (n - 1) + a * n - 1)
