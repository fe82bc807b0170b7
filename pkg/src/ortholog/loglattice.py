"""All skew-symmetric logarithms of a rotation.

For a *generic* ``R`` (simple rotation planes, eigenvalues -1 and +1 of
multiplicity at most two) the logarithms form the lattice

    B + 2 pi (r_1 B_1 + ... + r_q B_q),   r in Z^q,  q = n // 2,

over a principal logarithm ``B``.  For any ``R`` a claimed logarithm can be
checked against the general decomposition ``A = B + 2 pi sum l_j C_j``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .canon import canonical_form
from .errors import DomainError
from .matcore import (
    Tolerances,
    as_matrix,
    exp_oracle,
    frobenius_norm,
    is_skew,
    resolve_tol,
)
from .plog import principal_log
from .skewsvd import SvdSystem, decompose

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LatticeLog:
    base: np.ndarray
    directions: list
    coeffs: tuple
    angles: tuple = field(default=())

    @property
    def matrix(self) -> np.ndarray:
        A = self.base.copy()
        for r, D in zip(self.coeffs, self.directions):
            if r:
                A += TWO_PI * r * D
        return A

    @property
    def norm(self) -> float:
        # directions are Frobenius-orthogonal with norm sqrt(2)
        return math.sqrt(2.0 * sum((a + TWO_PI * r) ** 2 for a, r in zip(self.angles, self.coeffs)))


def is_generic(R, tol: Tolerances | None = None) -> bool:
    R = as_matrix(R, "R")
    return canonical_form(R, resolve_tol(tol, R.shape[0])).is_generic()


def lattice_basis(R, tol: Tolerances | None = None):
    """Principal bases and the q = n // 2 lattice directions of a generic ``R``.

    Returns ``(bases, directions, angles)`` where ``angles[h]`` is the
    coefficient of ``directions[h]`` in ``bases[0]``; a zero-angle direction
    on the fixed plane is appended when +1 has multiplicity two.
    """
    R = as_matrix(R, "R")
    n = R.shape[0]
    tol = resolve_tol(tol, n)
    desc = principal_log(R, tol)
    cf = desc.canonical
    if not cf.is_generic():
        raise DomainError(
            "R is not generic; its logarithms are not a discrete lattice (use plog.sample_aplog)"
        )
    directions = list(desc.system.factors)
    angles = [float(t) for t in cf.thetas]
    if cf.fixed_dim == 2:
        directions.append(cf.fixed_plane_factor())
        angles.append(0.0)
    assert len(directions) == n // 2
    bases = [desc.B]
    if cf.has_minus_one():
        bases.append(desc.B - TWO_PI * directions[0])
    return bases, directions, angles


def enumerate_logs(R, radius: float, tol: Tolerances | None = None) -> list:
    """Every logarithm of a generic ``R`` with Frobenius norm <= ``radius``, shortest first."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    R = as_matrix(R, "R")
    tol = resolve_tol(tol, R.shape[0])
    bases, directions, angles = lattice_basis(R, tol)

    found = []
    for b_idx, base in enumerate(bases):
        # second base is the first with the pi-direction coefficient shifted by -1
        base_angles = list(angles)
        if b_idx == 1:
            base_angles[0] -= TWO_PI
        ranges = []
        bound = radius / math.sqrt(2.0)
        for a in base_angles:
            lo = math.ceil((-bound - a) / TWO_PI)
            hi = math.floor((bound - a) / TWO_PI)
            ranges.append(range(lo, hi + 1))
        for coeffs in itertools.product(*ranges):
            cand = LatticeLog(base, directions, tuple(int(c) for c in coeffs), tuple(base_angles))
            if cand.norm > radius:
                continue
            M = cand.matrix
            if any(frobenius_norm(M - f.matrix) <= tol.recon_tol for f in found):
                continue
            found.append(cand)
    found.sort(key=lambda L: (round(L.norm, 10), L.coeffs))
    return found


class GeneralForm(NamedTuple):
    """Outcome of :func:`verify_general_form`.

    ``base`` is the principal logarithm, ``witness`` the singular value
    decomposition of the input, ``directions`` the sign-adjusted factors
    ``C_j`` and ``ints`` the integers ``l_j`` with
    ``A = base + 2 pi sum l_j C_j``.
    """

    ok: bool
    base: np.ndarray | None
    witness: SvdSystem | None
    ints: list
    directions: list
    reason: str


def _split_angle(zeta: float, pi_tol: float):
    """zeta = eta + k pi with eta in (0, pi], k >= 0."""
    q = zeta / math.pi
    k_near = round(q)
    if k_near >= 1 and abs(q - k_near) * math.pi <= pi_tol:
        return math.pi, k_near - 1
    k = math.ceil(q) - 1
    return zeta - k * math.pi, k


def verify_general_form(R, A, tol: Tolerances | None = None) -> GeneralForm:
    """Check that ``A`` is a logarithm of ``R`` and exhibit its general-form witness."""
    R = as_matrix(R, "R")
    A = as_matrix(A, "A")
    n = R.shape[0]
    tol = resolve_tol(tol, n)
    if A.shape != R.shape:
        return GeneralForm(False, None, None, [], [], "dimension_mismatch")
    if not is_skew(A, tol):
        return GeneralForm(False, None, None, [], [], "not_skew")
    A = 0.5 * (A - A.T)
    exp_tol = tol.recon_tol * max(1.0, frobenius_norm(A))
    if frobenius_norm(exp_oracle(A) - R) > exp_tol:
        return GeneralForm(False, None, None, [], [], "exp_mismatch")
    if frobenius_norm(A) == 0.0:
        return GeneralForm(True, np.zeros((n, n)), SvdSystem.empty(n), [], [], "ok")

    system = decompose(A, tol)
    base = np.zeros((n, n))
    ints, directions = [], []
    for zeta, F in zip(system.zetas, system.factors):
        eta, k = _split_angle(float(zeta), tol.pi_tol)
        if k % 2 == 0:
            tau, l, C = eta, k // 2, F
        else:
            tau, l, C = math.pi - eta, (-k - 1) // 2, -F
        base += tau * C
        ints.append(int(l))
        directions.append(C)

    witness_C = SvdSystem(n, system.zetas, directions, system.mults)
    cube, cross = witness_C.axiom_residuals()
    if cube > tol.recon_tol or cross > tol.recon_tol:
        return GeneralForm(False, base, system, ints, directions, "axiom_violation")
    rebuilt = base + TWO_PI * sum(l * C for l, C in zip(ints, directions))
    if frobenius_norm(rebuilt - A) > tol.recon_tol * max(1.0, frobenius_norm(A)):
        return GeneralForm(False, base, system, ints, directions, "reconstruction")
    comm = max(frobenius_norm(base @ C - C @ base) for C in directions)
    if comm > tol.recon_tol * max(1.0, frobenius_norm(base)):
        return GeneralForm(False, base, system, ints, directions, "not_commuting")
    if frobenius_norm(base) > 0.0:
        if decompose(base, tol).zetas[0] > math.pi + tol.pi_tol:
            return GeneralForm(False, base, system, ints, directions, "not_principal")
    if frobenius_norm(exp_oracle(base) - R) > tol.recon_tol * max(1.0, frobenius_norm(base)):
        return GeneralForm(False, base, system, ints, directions, "base_exp_mismatch")
    return GeneralForm(True, base, system, ints, directions, "ok")
