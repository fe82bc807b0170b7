"""Riemannian geometry of the orthogonal group under the Frobenius metric.

Geodesics through ``G`` are ``t -> G exp(tA)`` with ``A`` skew.  The minimal
ones joining ``G`` and ``H`` come from principal logarithms of ``G^T H``, and

    d(G, H) = sqrt(2 * sum_k m_k theta_k^2)

in terms of the canonical angles of ``G^T H``.  The diameter of each
component is ``pi * sqrt(2 * (n // 2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy.integrate import simpson

from .canon import canonical_form
from .errors import DomainError, PreconditionError
from .matcore import (
    Tolerances,
    as_matrix,
    det,
    frobenius_inner,
    frobenius_norm,
    is_orthogonal,
    is_skew,
    is_symmetric,
    resolve_tol,
)
from .plog import principal_log, principal_logs_of
from .skewsvd import SvdSystem, decompose


@dataclass(frozen=True)
class GeodesicArc:
    """The geodesic ``alpha(t) = G exp(tA)``.

    Evaluation uses the closed form
    ``G + sum_j [sin(t zeta_j) G A_j + (1 - cos(t zeta_j)) G A_j^2]``.
    """

    G: np.ndarray
    A: np.ndarray
    system: SvdSystem
    is_principal: bool

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def speed(self) -> float:
        return frobenius_norm(self.A)

    def length(self, t0: float = 0.0, t1: float = 1.0) -> float:
        return abs(t1 - t0) * self.speed

    def __call__(self, t: float) -> np.ndarray:
        out = self.G.copy()
        for z, F in zip(self.system.zetas, self.system.factors):
            GF = self.G @ F
            out += math.sin(t * z) * GF + (1.0 - math.cos(t * z)) * (GF @ F)
        return out

    def velocity(self, t: float) -> np.ndarray:
        out = np.zeros_like(self.G)
        for z, F in zip(self.system.zetas, self.system.factors):
            GF = self.G @ F
            out += z * (math.cos(t * z) * GF + math.sin(t * z) * (GF @ F))
        return out

    def sample(self, ts) -> np.ndarray:
        return np.stack([self(float(t)) for t in ts])


def geodesic(G, A, tol: Tolerances | None = None) -> GeodesicArc:
    G = as_matrix(G, "G")
    A = as_matrix(A, "A")
    if A.shape != G.shape:
        raise PreconditionError("G and A must have the same order")
    n = G.shape[0]
    tol = resolve_tol(tol, n)
    if not is_orthogonal(G, tol):
        raise PreconditionError("geodesic start point must be orthogonal")
    if not is_skew(A, tol):
        raise PreconditionError("geodesic generator must be skew-symmetric")
    A = 0.5 * (A - A.T)
    if frobenius_norm(A) == 0.0:
        system = SvdSystem.empty(n)
    else:
        system = decompose(A, tol)
    principal = len(system) == 0 or float(system.zetas[0]) <= math.pi + tol.pi_tol
    return GeodesicArc(G, A, system, principal)


def eval_arc(arc: GeodesicArc, t: float) -> np.ndarray:
    return arc(t)


def arc_length(arc: GeodesicArc, t0: float = 0.0, t1: float = 1.0, panels: int = 1024) -> float:
    """Length by composite Simpson quadrature of ||alpha'(t)||_F."""
    ts = np.linspace(t0, t1, panels + 1)
    speeds = [frobenius_norm(arc.velocity(float(t))) for t in ts]
    return float(simpson(speeds, x=ts))


def _check_pair(G, H, tol):
    G = as_matrix(G, "G")
    H = as_matrix(H, "H")
    if G.shape != H.shape:
        raise PreconditionError("G and H must have the same order")
    tol = resolve_tol(tol, G.shape[0])
    if not (is_orthogonal(G, tol) and is_orthogonal(H, tol)):
        raise PreconditionError("G and H must be orthogonal")
    return G, H, tol


def same_component(G, H) -> bool:
    # determinants of orthogonal matrices sit near +-1; compare signs
    return (det(G) > 0) == (det(H) > 0)


def distance(G, H, tol: Tolerances | None = None) -> float:
    G, H, tol = _check_pair(G, H, tol)
    if not same_component(G, H):
        raise DomainError("G and H lie in different components of O(n); distance is undefined")
    cf = canonical_form(G.T @ H, tol)
    return math.sqrt(2.0 * sum(m * t * t for m, t in zip(cf.mults, cf.thetas)))


def minimal_geodesics(G, H, tol: Tolerances | None = None):
    """Minimal geodesic arcs from ``G`` (t = 0) to ``H`` (t = 1).

    Returns ``(arcs, structure)``.  When the principal logarithm of
    ``G^T H`` is unique there is one arc, with two points there are two, and
    for a positive-dimensional family one representative arc is returned.
    """
    G, H, tol = _check_pair(G, H, tol)
    if not same_component(G, H):
        raise DomainError("G and H lie in different components of O(n)")
    desc = principal_log(G.T @ H, tol)
    arcs = [geodesic(G, B, tol) for B in principal_logs_of(desc)]
    return arcs, desc.structure


@dataclass(frozen=True)
class Periodicity:
    kind: str  # "Periodic" or "Undecided"
    period: float | None = None


def classify_periodicity(arc: GeodesicArc, tol: float = 1e-9, max_den: int = 1000) -> Periodicity:
    """Decide whether the geodesic closes up.

    Ratios zeta_j / zeta_1 are matched to fractions with denominator at most
    ``max_den``; with a common denominator m the candidate period is
    2 pi m / zeta_1, and it is accepted only if alpha(T) returns to alpha(0)
    within ``tol``.  Irrational ratios cannot be certified in floating point,
    so anything else is reported as ``Undecided``.
    """
    if len(arc.system) == 0:
        raise DomainError("constant geodesic has no period")
    zetas = [float(z) for z in arc.system.zetas]
    z1 = zetas[0]
    dens = []
    for z in zetas:
        frac = Fraction(z / z1).limit_denominator(max_den)
        if abs(z / z1 - float(frac)) > tol:
            return Periodicity("Undecided")
        dens.append(frac.denominator)
    m = reduce(math.lcm, dens, 1)
    T = 2.0 * math.pi * m / z1
    if frobenius_norm(arc(T) - arc(0.0)) > tol:
        return Periodicity("Undecided")
    return Periodicity("Periodic", T)


def diameter(n: int) -> float:
    if n < 1:
        raise DomainError("order must be at least 1")
    return math.sqrt(2 * (n // 2)) * math.pi


@dataclass(frozen=True)
class PairClass:
    same_component: bool
    weakly_diametral: bool
    diametral: bool
    grassmann_signature: tuple | None
    distance: float | None


def classify_pair(G, H, tol: Tolerances | None = None) -> PairClass:
    """Weak diametrality (G^T H symmetric) and diametrality (distance = diameter)."""
    G, H, tol = _check_pair(G, H, tol)
    n = G.shape[0]
    R = G.T @ H
    same = same_component(G, H)
    symmetric = is_symmetric(R, tol)
    signature = None
    if symmetric:
        # eigenvalues are +-1, so tr(R) = p - (n - p)
        p = int(round((n + float(np.trace(R))) / 2.0))
        signature = (p, n - p)
    d = distance(G, H, tol) if same else None
    diam = diameter(n)
    diametral = same and abs(d - diam) <= tol.pi_tol * max(1.0, diam)
    return PairClass(same, same and symmetric, diametral, signature, d)


def einstein_constants(n: int) -> tuple[float, float]:
    """Ricci coefficient (n - 2) / 4 and scalar curvature (n - 2)(n - 1)n / 8."""
    if n < 1:
        raise DomainError("order must be at least 1")
    return (n - 2) / 4.0, (n - 2) * (n - 1) * n / 8.0


def sectional_curvature(X, Y, tol: Tolerances | None = None) -> float:
    """Sectional curvature of the plane spanned by skew X, Y (bi-invariant metric).

    K = ||[X, Y]||^2 / (4 (||X||^2 ||Y||^2 - g(X, Y)^2))
    """
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    tol = resolve_tol(tol, X.shape[0])
    if not (is_skew(X, tol) and is_skew(Y, tol)):
        raise PreconditionError("tangent vectors at the identity must be skew-symmetric")
    xx, yy, xy = frobenius_inner(X, X), frobenius_inner(Y, Y), frobenius_inner(X, Y)
    area = xx * yy - xy * xy
    if area <= 1e-12 * xx * yy or area == 0.0:
        raise DomainError("X and Y are linearly dependent")
    C = X @ Y - Y @ X
    return frobenius_inner(C, C) / (4.0 * area)
