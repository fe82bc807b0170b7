"""
Principal logarithms and what happens at -1
===========================================

Without -1 in the spectrum the principal log is unique.  With -1 of
multiplicity 2 there are exactly two, and beyond that a whole family
split into two pieces by the sign of a Pfaffian.
"""

import numpy as np

from ortholog import classify_component, exp_oracle, principal_log, rot, sample_aplog
from ortholog.matcore import block_diag
from ortholog.plog import w_block

cases = {
    "rot(1) + rot(2)": block_diag(rot(1.0), rot(2.0)),
    "-I2": -np.eye(2),
    "-I2 + rot(1)": block_diag(-np.eye(2), rot(1.0)),
    "-I4": -np.eye(4),
    "-I6": -np.eye(6),
}
for name, R in cases.items():
    s = principal_log(R).structure
    print(f"{name:16s} {s.kind:10s} mu={s.mu} dim={s.dim}")

# sample the family for -I4 and watch both components appear
R = -np.eye(4)
desc = principal_log(R)
for S in sample_aplog(R, 6, seed=1):
    sign = classify_component(w_block(S, desc))
    print(
        f"pfaffian sign {sign:+d}   tr(S^2) = {np.trace(S @ S):.12f}"
        f"   ||exp(S) - R|| = {np.linalg.norm(exp_oracle(S) - R):.1e}"
    )
