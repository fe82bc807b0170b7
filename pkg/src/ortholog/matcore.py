"""Dense real matrix substrate.

Matrices are plain ``numpy.ndarray`` objects of shape ``(n, n)`` and dtype
float64.  Everything that the rest of the package needs from linear algebra
lives here and is self-contained: a cyclic Jacobi eigensolver, LU with partial
pivoting, a scaling-and-squaring exponential and a Parlett-Reid Pfaffian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError, PreconditionError, SingularityError

E0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
E0.flags.writeable = False

# 2x2 swap; P0.T @ E0 @ P0 == -E0
P0 = np.array([[0.0, 1.0], [1.0, 0.0]])
P0.flags.writeable = False

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used by predicates and clustering.

    The defaults are the order-1 values; use :meth:`for_order` to get the
    order-scaled defaults (``orth_tol`` and ``recon_tol`` grow linearly in n).
    """

    orth_tol: float = 1e-9
    cluster_tol: float = 1e-8
    pi_tol: float = 1e-8
    recon_tol: float = 1e-9

    def __post_init__(self):
        for name in ("orth_tol", "cluster_tol", "pi_tol", "recon_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite float, got {value!r}")

    @classmethod
    def for_order(cls, n: int, scale: float = 1.0) -> "Tolerances":
        return cls(
            orth_tol=1e-9 * n * scale,
            cluster_tol=1e-8 * scale,
            pi_tol=1e-8 * scale,
            recon_tol=1e-9 * n * scale,
        )

    def scaled(self, factor: float) -> "Tolerances":
        return replace(
            self,
            orth_tol=self.orth_tol * factor,
            cluster_tol=self.cluster_tol * factor,
            pi_tol=self.pi_tol * factor,
            recon_tol=self.recon_tol * factor,
        )


def resolve_tol(tol: Tolerances | None, n: int) -> Tolerances:
    return Tolerances.for_order(n) if tol is None else tol


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and return ``M`` as a finite square float64 array (a copy)."""
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError(f"{name} has non-finite entries")
    return a


def _same_order(*mats):
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise DimensionError("matrices must have the same order")
    return n


def rot(theta: float) -> np.ndarray:
    """exp(theta * E0) = [[cos, sin], [-sin, cos]]."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def block_diag(*blocks) -> np.ndarray:
    """Block-diagonal matrix; scalars are 1x1 blocks."""
    blocks = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks]
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def frobenius_inner(V, W) -> float:
    """Frobenius metric g(V, W) = tr(V^T W)."""
    V, W = as_matrix(V, "V"), as_matrix(W, "W")
    _same_order(V, W)
    return float(np.sum(V * W))


def frobenius_norm(M) -> float:
    return float(np.sqrt(np.sum(np.square(M))))


def trace_metric(G, V, W) -> float:
    """Trace metric tr(G^-1 V G^-1 W) at the point G of GL_n."""
    G, V, W = as_matrix(G, "G"), as_matrix(V, "V"), as_matrix(W, "W")
    _same_order(G, V, W)
    lu = lu_factor(G)
    X = lu_solve(lu, V)
    Y = lu_solve(lu, W)
    return float(np.sum(X * Y.T))


def is_orthogonal(M, tol: Tolerances | None = None) -> bool:
    M = np.asarray(M, dtype=float)
    tol = resolve_tol(tol, M.shape[0])
    return frobenius_norm(M.T @ M - np.eye(M.shape[0])) <= tol.orth_tol


def is_skew(M, tol: Tolerances | None = None) -> bool:
    M = np.asarray(M, dtype=float)
    tol = resolve_tol(tol, M.shape[0])
    return frobenius_norm(M + M.T) <= tol.orth_tol


def is_symmetric(M, tol: Tolerances | None = None) -> bool:
    M = np.asarray(M, dtype=float)
    tol = resolve_tol(tol, M.shape[0])
    return frobenius_norm(M - M.T) <= tol.orth_tol


def skew_part(M) -> np.ndarray:
    return 0.5 * (M - M.T)


def sym_part(M) -> np.ndarray:
    return 0.5 * (M + M.T)


# -- LU -------------------------------------------------------------------


@dataclass(frozen=True)
class LU:
    lu: np.ndarray
    perm: np.ndarray
    sign: int

    @property
    def det(self) -> float:
        return self.sign * float(np.prod(np.diag(self.lu)))


def lu_factor(M) -> LU:
    """Doolittle LU with partial pivoting.  Raises SingularityError on a zero pivot."""
    a = as_matrix(M)
    n = a.shape[0]
    perm = np.arange(n)
    sign = 1
    scale = max(frobenius_norm(a), np.finfo(float).tiny)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= n * _EPS * scale:
            raise SingularityError("matrix is singular to working precision")
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return LU(a, perm, sign)


def lu_solve(lu: LU, b) -> np.ndarray:
    a = lu.lu
    n = a.shape[0]
    x = np.array(b, dtype=float)[lu.perm]
    for k in range(n):
        x[k + 1:] -= np.multiply.outer(a[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= a[k, k]
        x[:k] -= np.multiply.outer(a[:k, k], x[k])
    return x


def det(M) -> float:
    """Determinant via pivoted LU; 0.0 for singular input."""
    try:
        return lu_factor(M).det
    except SingularityError:
        return 0.0


# -- symmetric eigenproblem ----------------------------------------------


def sym_eig(S, tol: Tolerances | None = None, max_sweeps: int = 60):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns
    -------
    lam : ndarray
        Eigenvalues in descending order.
    Q : ndarray
        Orthogonal matrix whose columns are the matching eigenvectors,
        so that ``Q.T @ S @ Q`` is ``diag(lam)``.
    """
    a = as_matrix(S, "S")
    n = a.shape[0]
    if not is_symmetric(a, tol):
        raise PreconditionError("sym_eig needs a symmetric matrix")
    a = sym_part(a)
    v = np.eye(n)
    target = _EPS * frobenius_norm(a)
    for _ in range(max_sweeps):
        off = frobenius_norm(a - np.diag(np.diag(a)))
        if off <= target or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                g = 100.0 * abs(apq)
                if abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                if abs(h) + g == abs(h):
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    return lam[order], v[:, order]


# -- exponential ---------------------------------------------------------

_TAYLOR_TERMS = 16


def exp_oracle(A) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a 16-term Taylor kernel.

    The scaling exponent s is the smallest with ||A||_F / 2**s <= 1/2.
    Used throughout as the reference the closed forms are checked against.
    """
    A = as_matrix(A, "A")
    n = A.shape[0]
    norm = frobenius_norm(A)
    s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    X = A / (2.0 ** s)
    eye = np.eye(n)
    E = eye.copy()
    for k in range(_TAYLOR_TERMS, 0, -1):
        E = eye + (X @ E) / k
    for _ in range(s):
        E = E @ E
    return E


# -- Pfaffian ------------------------------------------------------------


def pfaffian(A, tol: Tolerances | None = None) -> float:
    """Pfaffian of an even-order skew-symmetric matrix.

    Parlett-Reid reduction to skew-tridiagonal form with partial pivoting;
    every row/column swap flips the sign.
    """
    a = as_matrix(A, "A")
    n = a.shape[0]
    if n % 2:
        raise DimensionError("the Pfaffian is defined for even order only")
    if not is_skew(a, tol):
        raise PreconditionError("pfaffian needs a skew-symmetric matrix")
    a = skew_part(a)
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0.0:
            return 0.0
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            col = a[k + 2:, k + 1].copy()
            a[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return float(pf)


# -- random sampling -----------------------------------------------------


def haar_orthogonal(n: int, rng: np.random.Generator, det_sign: int | None = None) -> np.ndarray:
    """Haar-distributed orthogonal matrix as a product of random Householder reflections.

    ``det_sign`` (+1 or -1) forces the determinant; the result is then Haar
    distributed on that component.
    """
    Q = np.eye(n)
    sign = 1
    for k in range(n, 1, -1):
        x = rng.standard_normal(k)
        alpha = -math.copysign(np.linalg.norm(x), x[0])
        u = x.copy()
        u[0] -= alpha
        unorm = np.linalg.norm(u)
        if unorm == 0.0:
            continue
        u /= unorm
        # H = I - 2uu^T embedded on the trailing k coordinates
        Q[:, n - k:] -= 2.0 * np.outer(Q[:, n - k:] @ u, u)
        sign = -sign
    d = rng.choice([-1.0, 1.0], size=n)
    Q = Q * d
    sign *= int(np.prod(d))
    if det_sign is not None and sign != det_sign:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_skew(n: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    X = rng.standard_normal((n, n))
    A = X - X.T
    if norm is not None:
        A *= norm / max(frobenius_norm(A), np.finfo(float).tiny)
    return A
