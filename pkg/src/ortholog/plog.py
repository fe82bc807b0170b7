"""Skew-symmetric principal logarithms of special orthogonal matrices.

A principal logarithm of ``R`` is a skew ``B`` with ``exp(B) = R`` whose
eigenvalues have modulus at most pi.  It is unique unless -1 is an eigenvalue
of ``R``.  When -1 has multiplicity ``2 mu`` the set of principal logarithms
is a copy of the skew-symmetric orthogonal matrices of order ``2 mu``: two
points for ``mu = 1`` and in general a manifold of dimension ``mu (mu - 1)``
with two components told apart by the sign of the Pfaffian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .canon import CanonicalForm, canonical_form
from .errors import DomainError, PreconditionError
from .matcore import (
    E0,
    Tolerances,
    as_matrix,
    block_diag,
    frobenius_norm,
    haar_orthogonal,
    is_orthogonal,
    is_skew,
    pfaffian,
    resolve_tol,
)
from .skewsvd import SvdSystem, decompose


@dataclass(frozen=True)
class AplogStructure:
    """Shape of the set of principal logarithms.

    ``kind`` is ``"Unique"``, ``"TwoPoints"`` or ``"Manifold"``; for the
    manifold case ``dim = mu * (mu - 1)`` and there are two components.
    """

    kind: str
    mu: int = 0
    dim: int = 0
    components: int = 1

    @classmethod
    def from_mu(cls, mu: int) -> "AplogStructure":
        if mu == 0:
            return cls("Unique", 0, 0, 1)
        if mu == 1:
            return cls("TwoPoints", 1, 0, 2)
        return cls("Manifold", mu, mu * (mu - 1), 2)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "mu": self.mu, "dim": self.dim, "components": self.components}


@dataclass(frozen=True)
class PlogDescriptor:
    B: np.ndarray
    system: SvdSystem
    structure: AplogStructure
    canonical: CanonicalForm
    b1_squared: np.ndarray | None = None

    @property
    def tr_sq(self) -> float:
        return float(np.trace(self.B @ self.B))


def _system_from_canonical(cf: CanonicalForm) -> SvdSystem:
    factors = [cf.factor(k) for k in range(cf.p)]
    return SvdSystem(cf.n, np.array(cf.thetas, dtype=float), factors, tuple(cf.mults))


def principal_log(R, tol: Tolerances | None = None) -> PlogDescriptor:
    """One principal logarithm ``B = sum theta_k B_k`` of ``R`` plus the structure of all of them."""
    R = as_matrix(R, "R")
    tol = resolve_tol(tol, R.shape[0])
    cf = canonical_form(R, tol)
    system = _system_from_canonical(cf)
    B = system.reconstruct()
    mu = cf.mults[0] if cf.has_minus_one() else 0
    b1_sq = None
    if mu:
        b1_sq = _b1_squared(R, cf, system)
        direct = system.factors[0] @ system.factors[0]
        # the closed form is the invariant certificate; B_1 B_1 is only a cross-check
        if frobenius_norm(b1_sq - direct) > max(1e-6, 1e3 * tol.recon_tol):
            raise PreconditionError("B_1^2 identity failed; R is too far from SO(n) for the tolerances")
    return PlogDescriptor(B, system, AplogStructure.from_mu(mu), cf, b1_sq)


def _b1_squared(R, cf: CanonicalForm, system: SvdSystem) -> np.ndarray:
    n = cf.n
    out = 0.25 * (R + R.T) - 0.5 * np.eye(n)
    for theta, F in zip(system.zetas[1:], system.factors[1:]):
        out -= 0.5 * (1.0 - math.cos(theta)) * (F @ F)
    return out


def all_principal_logs_generic(R, tol: Tolerances | None = None) -> list:
    """Every principal logarithm of a generic ``R`` (one, or two when -1 is an eigenvalue)."""
    R = as_matrix(R, "R")
    tol = resolve_tol(tol, R.shape[0])
    desc = principal_log(R, tol)
    if not desc.canonical.is_generic():
        raise DomainError(
            "R is not generic (repeated rotation angles or eigenvalue +/-1 of multiplicity > 2); "
            "use sample_aplog to explore its principal logarithms"
        )
    return principal_logs_of(desc)


def principal_logs_of(desc: PlogDescriptor) -> list:
    """The finitely many principal logs when the structure is discrete, else ``[B]``."""
    if desc.structure.kind == "TwoPoints":
        rest = desc.B - math.pi * desc.system.factors[0]
        return [desc.B, rest - math.pi * desc.system.factors[0]]
    return [desc.B]


def sample_aplog(R, count: int, seed, tol: Tolerances | None = None) -> list:
    """Draw ``count`` principal logarithms of ``R`` (requires -1 in the spectrum).

    Each sample is ``pi W + sum_{j>=2} theta_j B_j`` with
    ``W = K diag(M, 0) K^T`` and ``M = Q diag(E0, ..., E0) Q^T`` for a Haar
    orthogonal ``Q``.  The determinant of ``Q`` alternates +1, -1, ... so both
    Pfaffian components are visited.  For ``mu = 1`` the two exact points
    ``+-pi B_1 + ...`` are returned alternately.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    R = as_matrix(R, "R")
    tol = resolve_tol(tol, R.shape[0])
    if count < 0:
        raise ValueError("count must be non-negative")
    desc = principal_log(R, tol)
    cf = desc.canonical
    if not cf.has_minus_one():
        raise DomainError("-1 is not an eigenvalue of R; the principal logarithm is unique")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    mu = cf.mults[0]
    rest = desc.B - math.pi * desc.system.factors[0]
    if mu == 1:
        B1 = desc.system.factors[0]
        return [rest + (math.pi if i % 2 == 0 else -math.pi) * B1 for i in range(count)]

    J = block_diag(*([E0] * mu))
    K1 = cf.K[:, : 2 * mu]
    out = []
    for i in range(count):
        Q = haar_orthogonal(2 * mu, rng, det_sign=1 if i % 2 == 0 else -1)
        M = Q @ J @ Q.T
        M = 0.5 * (M - M.T)
        out.append(rest + math.pi * (K1 @ M @ K1.T))
    return out


def w_block(S, desc: PlogDescriptor) -> np.ndarray:
    """The order-2mu block M of a principal log ``S = pi K diag(M, 0) K^T + ...``."""
    cf = desc.canonical
    if not cf.has_minus_one():
        raise DomainError("no -1 eigenvalue, hence no W-block")
    mu = cf.mults[0]
    K1 = cf.K[:, : 2 * mu]
    M = K1.T @ np.asarray(S, dtype=float) @ K1 / math.pi
    return 0.5 * (M - M.T)


def classify_component(W_block, tol: Tolerances | None = None) -> int:
    """+1 or -1: sign of the Pfaffian of a skew-symmetric orthogonal block."""
    W_block = as_matrix(W_block, "W_block")
    tol = resolve_tol(tol, W_block.shape[0])
    if W_block.shape[0] % 2:
        raise PreconditionError("W-block must have even order")
    if not (is_skew(W_block, tol) and is_orthogonal(W_block, tol)):
        raise PreconditionError("W-block must be skew-symmetric and orthogonal")
    return 1 if pfaffian(W_block, tol) > 0 else -1


def is_principal(A, tol: Tolerances | None = None) -> bool:
    """True when every eigenvalue of the skew matrix A has modulus <= pi (+ pi_tol)."""
    A = as_matrix(A, "A")
    tol = resolve_tol(tol, A.shape[0])
    if frobenius_norm(A) == 0.0:
        return True
    return float(decompose(A, tol).zetas[0]) <= math.pi + tol.pi_tol
