"""
Every logarithm of a generic rotation
=====================================

Generic rotations have a discrete lattice of logs, one integer per
rotation plane.  We list the short ones and check each independently.
"""

import numpy as np

from ortholog import enumerate_logs, rot, verify_general_form
from ortholog.matcore import block_diag

R = block_diag(rot(1.0), np.eye(1))  # rotation by 1 rad about the z-axis
for L in enumerate_logs(R, radius=12.0):
    res = verify_general_form(R, L.matrix)
    print(f"coeffs={L.coeffs}  norm={L.norm:7.4f}  verified={res.ok}")

# four dimensions: two planes, a two-dimensional lattice
R4 = block_diag(rot(0.4), rot(1.3))
logs = enumerate_logs(R4, radius=14.0)
print(f"\n{len(logs)} logs of norm <= 14 in SO(4); shortest five:")
for L in logs[:5]:
    print(" ", L.coeffs, round(L.norm, 4))
