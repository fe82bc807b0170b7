"""Canonical rotation-block form of special orthogonal matrices.

Every ``R`` in SO(n) factors as

    R = K diag(rot(theta_1) x m_1, ..., rot(theta_p) x m_p, I_{n-2m}) K^T

with ``K`` orthogonal, distinct angles ``pi >= theta_1 > ... > theta_p > 0``
and ``rot(t) = exp(t E0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .matcore import (
    Tolerances,
    as_matrix,
    block_diag,
    det,
    frobenius_norm,
    is_orthogonal,
    resolve_tol,
    rot,
    sym_eig,
)


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    thetas: np.ndarray
    mults: tuple
    K: np.ndarray

    @property
    def m(self) -> int:
        return int(sum(self.mults))

    @property
    def fixed_dim(self) -> int:
        return self.n - 2 * self.m

    @property
    def p(self) -> int:
        return len(self.thetas)

    def plane_angles(self) -> list:
        """Angle of every 2x2 block, in K's column order."""
        return [t for t, m in zip(self.thetas, self.mults) for _ in range(m)]

    def block_matrix(self) -> np.ndarray:
        blocks = [rot(t) for t in self.plane_angles()]
        blocks += [1.0] * self.fixed_dim
        return block_diag(*blocks)

    def reconstruct(self) -> np.ndarray:
        return self.K @ self.block_matrix() @ self.K.T

    def block_slice(self, k: int) -> slice:
        """Columns of K spanning the planes of angle ``thetas[k]``."""
        start = 2 * sum(self.mults[:k])
        return slice(start, start + 2 * self.mults[k])

    def factor(self, k: int) -> np.ndarray:
        """K diag(0, ..., E0 x m_k, ..., 0) K^T for the k-th angle."""
        sl = self.block_slice(k)
        Kc = self.K[:, sl]
        return _plane_sum(Kc)

    def fixed_plane_factor(self) -> np.ndarray:
        """K diag(0, ..., 0, E0) K^T on the last two fixed directions (needs fixed_dim >= 2)."""
        if self.fixed_dim < 2:
            raise ValueError("no fixed plane available")
        return _plane_sum(self.K[:, self.n - 2:])

    def has_minus_one(self) -> bool:
        return self.p > 0 and self.thetas[0] == math.pi

    def is_generic(self) -> bool:
        """All rotation planes simple, -1 of multiplicity <= 2, +1 of multiplicity <= 2."""
        return all(m == 1 for m in self.mults) and self.fixed_dim <= 2


def _plane_sum(Kc: np.ndarray) -> np.ndarray:
    # sum over planes (u, v) of u v^T - v u^T, i.e. Kc diag(E0, ...) Kc^T
    U, V = Kc[:, 0::2], Kc[:, 1::2]
    return U @ V.T - V @ U.T


def _pair_planes(Vc: np.ndarray, W: np.ndarray) -> list:
    """Orthonormal (u, v) pairs spanning span(Vc) with v = -W u / ||W u||.

    Falls back to consecutive basis vectors when W vanishes on the span
    (angle pi), where any orthonormal pairing gives the block -I_2.
    """
    P = Vc @ Vc.T
    remaining = [Vc[:, i].copy() for i in range(Vc.shape[1])]
    chosen = []
    while len(chosen) < Vc.shape[1]:
        # most independent remaining candidate, after deflating the chosen ones
        best, best_norm = None, -1.0
        for c in remaining:
            r = c.copy()
            for w in chosen:
                r -= (w @ r) * w
            nr = float(np.linalg.norm(r))
            if nr > best_norm:
                best, best_norm = r, nr
        u = best / best_norm
        v = P @ (-(W @ u))
        v -= (u @ v) * u
        for w in chosen:
            v -= (w @ v) * w
        nv = float(np.linalg.norm(v))
        if nv < 1e-3 * float(np.linalg.norm(W @ u)) or nv == 0.0:
            # no usable rotation direction; take any orthogonal completion
            best_v, best_nv = None, -1.0
            for c in remaining:
                r = c - (u @ c) * u
                for w in chosen:
                    r -= (w @ r) * w
                nr = float(np.linalg.norm(r))
                if nr > best_nv:
                    best_v, best_nv = r, nr
            v, nv = best_v, best_nv
        v = v / nv
        chosen.extend([u, v])
    return [(chosen[i], chosen[i + 1]) for i in range(0, len(chosen), 2)]


def canonical_form(R, tol: Tolerances | None = None) -> CanonicalForm:
    """Canonical angle-block factorization of ``R`` in SO(n).

    Eigenvectors of the symmetric part (R + R^T)/2 carry cos(theta); the skew
    part (R - R^T)/2 carries sin(theta) and orients each plane.  Angles come
    from atan2, are clustered with ``cluster_tol``, snapped to pi within
    ``pi_tol`` and treated as fixed directions below ``pi_tol``.
    """
    R = as_matrix(R, "R")
    n = R.shape[0]
    tol = resolve_tol(tol, n)
    if not is_orthogonal(R, tol):
        raise PreconditionError("canonical_form needs an orthogonal matrix")
    if det(R) <= 0:
        raise PreconditionError("canonical_form needs det(R) = +1")

    S = 0.5 * (R + R.T)
    W = 0.5 * (R - R.T)
    lam, Q = sym_eig(S, tol)
    sines = np.linalg.norm(W @ Q, axis=0)
    angles = np.arctan2(sines, lam)

    order = np.argsort(-angles, kind="stable")
    angles, Q = angles[order], Q[:, order]

    fixed = angles <= tol.pi_tol
    groups = []
    for i in np.flatnonzero(~fixed):
        if groups and angles[groups[-1][-1]] - angles[i] <= tol.cluster_tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    columns, thetas, mults = [], [], []
    for idx in groups:
        if len(idx) % 2:
            raise PreconditionError(
                "rotation eigenvectors could not be paired into planes; check tolerances"
            )
        planes = _pair_planes(Q[:, idx], W)
        plane_thetas = []
        for u, v in planes:
            c = 0.5 * (u @ R @ u + v @ R @ v)
            s = 0.5 * (u @ R @ v - v @ R @ u)
            if s < 0:
                # roundoff near pi can flip the orientation; keep theta in [0, pi]
                v, s = -v, -s
            plane_thetas.append(math.atan2(s, c))
            columns.extend([u, v])
        theta = float(np.mean(plane_thetas))
        if theta >= math.pi - tol.pi_tol:
            theta = math.pi
        thetas.append(theta)
        mults.append(len(planes))

    # two clusters may both have snapped onto pi
    if len(thetas) > 1 and thetas[0] == thetas[1] == math.pi:
        raise PreconditionError("ambiguous angle clustering near pi; adjust cluster_tol/pi_tol")

    fixed_idx = np.flatnonzero(fixed)
    Kf = Q[:, fixed_idx]
    if columns:
        Kr = np.column_stack(columns)
        # re-orthogonalize the fixed block against the rotation planes
        Kf = Kf - Kr @ (Kr.T @ Kf)
        K = np.column_stack([Kr, Kf]) if Kf.size else Kr
    else:
        K = Kf
    K = _polish_orthonormal(K)
    return CanonicalForm(n, np.array(thetas), tuple(mults), K)


def _polish_orthonormal(K: np.ndarray) -> np.ndarray:
    # one step of modified Gram-Schmidt, column order preserved
    K = K.copy()
    for j in range(K.shape[1]):
        for i in range(j):
            K[:, j] -= (K[:, i] @ K[:, j]) * K[:, i]
        K[:, j] /= np.linalg.norm(K[:, j])
    return K


def has_minus_one(cf: CanonicalForm, tol: Tolerances | None = None) -> tuple[bool, int]:
    """Whether -1 is an eigenvalue, and its multiplicity 2 m_1 (0 when absent)."""
    tol = resolve_tol(tol, cf.n)
    if cf.p and abs(cf.thetas[0] - math.pi) <= tol.pi_tol:
        return True, 2 * cf.mults[0]
    return False, 0


def reconstruction_residual(R, cf: CanonicalForm) -> float:
    return frobenius_norm(np.asarray(R, dtype=float) - cf.reconstruct())
