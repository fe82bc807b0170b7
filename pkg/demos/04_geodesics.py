"""
Geodesics, distance and diametral pairs
=======================================

Geodesics of O(n) with the Frobenius metric are G exp(tA).  The shortest
ones come from principal logs, which gives the distance and the diameter.
"""

import numpy as np

from ortholog import (
    E0,
    arc_length,
    classify_pair,
    classify_periodicity,
    diameter,
    distance,
    geodesic,
    minimal_geodesics,
)
from ortholog.matcore import block_diag, haar_orthogonal

rng = np.random.default_rng(3)

print("d(I2, -I2) =", distance(np.eye(2), -np.eye(2)), " diameter(2) =", diameter(2))

# a minimal arc between two random rotations, measured two ways
G = haar_orthogonal(5, rng, det_sign=1)
H = haar_orthogonal(5, rng, det_sign=1)
arc = minimal_geodesics(G, H)[0][0]
print(f"d(G, H) = {distance(G, H):.10f}   quadrature length = {arc_length(arc):.10f}")

# the arc as plottable samples
ts = np.linspace(0.0, 1.0, 5)
path = arc.sample(ts)
print("||alpha(1) - H|| =", np.linalg.norm(path[-1] - H))

# closed and undecided geodesics
for scale in (2.0, np.sqrt(2)):
    a = geodesic(np.eye(4), block_diag(E0, scale * E0))
    print(f"ratio {scale:.4f}:", classify_periodicity(a, max_den=50))

# diametral pairs
for H in (-np.eye(2), np.diag([1.0, -1.0, -1.0]), np.diag([-1.0, -1.0, 1.0, 1.0])):
    n = H.shape[0]
    print(n, classify_pair(np.eye(n), H))
