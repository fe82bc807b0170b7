"""Singular value decomposition of skew-symmetric matrices.

A nonzero skew-symmetric ``A`` is uniquely ``sum_j zeta_j A_j`` with distinct
``zeta_1 > ... > zeta_s > 0`` and skew factors satisfying ``A_j^3 = -A_j`` and
``A_j A_h = 0`` for ``j != h``.  The factors make the exponential closed form:

    exp(A) = I + sum_j [sin(zeta_j) A_j + (1 - cos(zeta_j)) A_j^2]
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyDecompositionError, PreconditionError
from .matcore import Tolerances, as_matrix, frobenius_norm, is_skew, resolve_tol, sym_eig


@dataclass(frozen=True)
class SvdSystem:
    """Distinct positive singular values with their skew factor matrices."""

    n: int
    zetas: np.ndarray
    factors: list = field(default_factory=list)
    mults: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "zetas", np.asarray(self.zetas, dtype=float))
        if len(self.factors) != len(self.zetas):
            raise ValueError("one factor per singular value")
        if not self.mults:
            mults = tuple(int(round(-np.trace(F @ F) / 2.0)) for F in self.factors)
            object.__setattr__(self, "mults", mults)

    def __len__(self):
        return len(self.zetas)

    @classmethod
    def empty(cls, n: int) -> "SvdSystem":
        return cls(n, np.zeros(0), [], ())

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for z, F in zip(self.zetas, self.factors):
            out += z * F
        return out

    def scaled(self, t: float) -> "SvdSystem":
        """System of ``t * A``: singular values |t| zeta_j, factors sign(t) A_j."""
        if t == 0:
            return SvdSystem.empty(self.n)
        sign = 1.0 if t > 0 else -1.0
        return SvdSystem(self.n, abs(t) * self.zetas, [sign * F for F in self.factors], self.mults)

    def axiom_residuals(self) -> tuple[float, float]:
        """Largest ||A_j^3 + A_j||_F and largest ||A_j A_h||_F over j != h."""
        cube = max((frobenius_norm(F @ F @ F + F) for F in self.factors), default=0.0)
        cross = 0.0
        for j, Fj in enumerate(self.factors):
            for h, Fh in enumerate(self.factors):
                if j != h:
                    cross = max(cross, frobenius_norm(Fj @ Fh))
        return cube, cross


def decompose(A, tol: Tolerances | None = None) -> SvdSystem:
    """SVD system of a nonzero skew-symmetric matrix.

    Eigen-decomposes the positive semidefinite ``-A @ A``, clusters the square
    roots of its eigenvalues, and maps each cluster's eigenvectors through ``A``.
    """
    A = as_matrix(A, "A")
    n = A.shape[0]
    tol = resolve_tol(tol, n)
    if not is_skew(A, tol):
        raise PreconditionError("decompose needs a skew-symmetric matrix")
    A = 0.5 * (A - A.T)
    normA = frobenius_norm(A)
    if normA == 0.0:
        raise EmptyDecompositionError("the zero matrix has no singular value decomposition")

    S = -(A @ A)
    _, Q = sym_eig(0.5 * (S + S.T), tol)
    # ||A q|| recovers each root to ~eps ||A||; sqrt(lam) only to ~sqrt(eps) ||A||
    # near zero, which would let roundoff cross the (cluster_tol ||A||)^2 cut
    roots = np.linalg.norm(A @ Q, axis=0)
    order = np.argsort(-roots, kind="stable")
    roots, Q = roots[order], Q[:, order]
    keep = roots > tol.cluster_tol * normA
    gap = tol.cluster_tol * (1.0 + roots[0])

    clusters = []
    for i in np.flatnonzero(keep):
        if clusters and roots[clusters[-1][-1]] - roots[i] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    zetas, factors, mults = [], [], []
    for idx in clusters:
        if len(idx) % 2:
            raise PreconditionError(
                "singular values could not be paired; increase cluster_tol"
            )
        r = roots[idx]
        V = Q[:, idx]
        # A V diag(1/r) V^T is a partial isometry on the cluster's invariant subspace
        F = (A @ V / r) @ V.T
        F = 0.5 * (F - F.T)
        zetas.append(float(np.mean(r)))
        factors.append(F)
        mults.append(len(idx) // 2)
    return SvdSystem(n, np.array(zetas), factors, tuple(mults))


def eig_summary(system: SvdSystem) -> tuple[int, float]:
    """(rank, tr(A^2)) read off the system: 2 sum m_k and -2 sum m_k zeta_k^2."""
    rank = 2 * sum(system.mults)
    tr_sq = -2.0 * float(sum(m * z * z for m, z in zip(system.mults, system.zetas)))
    return rank, tr_sq


def sym_skew_parts(system: SvdSystem) -> tuple[np.ndarray, np.ndarray]:
    sym = np.eye(system.n)
    skew = np.zeros((system.n, system.n))
    for z, F in zip(system.zetas, system.factors):
        sym += (1.0 - np.cos(z)) * (F @ F)
        skew += np.sin(z) * F
    return sym, skew


def rodrigues_exp(system: SvdSystem) -> np.ndarray:
    """exp(sum zeta_j A_j) in closed form."""
    sym, skew = sym_skew_parts(system)
    return sym + skew
