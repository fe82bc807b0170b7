import math

import numpy as np
import pytest

from ortholog.errors import DomainError
from ortholog.loglattice import (
    TWO_PI,
    _split_angle,
    enumerate_logs,
    is_generic,
    lattice_basis,
    verify_general_form,
)
from ortholog.matcore import E0, exp_oracle, frobenius_norm, rot

from oracles import block_rotation, expm, random_orthogonal, random_rotation


def closed_form_count(theta, radius):
    """#{r in Z : |theta + 2 pi r| <= radius / sqrt(2)} by brute force."""
    bound = radius / math.sqrt(2)
    return sum(1 for r in range(-100, 101) if abs(theta + TWO_PI * r) <= bound)


@pytest.mark.parametrize(
    "R, expected",
    [
        (block_rotation(1.0, 2.0), True),
        (-np.eye(4), False),
        (block_rotation(0.3, fixed=1), True),
        (block_rotation(minus=1, fixed=1), True),
        (np.eye(3), False),
        (np.eye(2), True),
    ],
)
def test_is_generic(R, expected):
    assert is_generic(R) is expected


def test_every_so3_rotation_except_identity_is_generic(rng):
    for _ in range(50):
        assert is_generic(random_rotation(3, rng))


def test_quarter_turn_radius_ten():
    # |pi/2 + 2 pi r| sqrt(2) <= 10 holds for r in {-1, 0} only: (pi/2 + 2 pi) sqrt(2) ~ 11.1
    logs = enumerate_logs(rot(math.pi / 2), 10.0)
    assert [L.coeffs for L in logs] == [(0,), (-1,)]
    assert len(logs) == closed_form_count(math.pi / 2, 10.0) == 2
    for L in logs:
        np.testing.assert_allclose(expm(L.matrix), rot(math.pi / 2), atol=1e-13)


def test_identity_two_radius_seven():
    logs = enumerate_logs(np.eye(2), 7.0)
    assert len(logs) == 1
    np.testing.assert_array_equal(logs[0].matrix, np.zeros((2, 2)))


def test_so3_rotation_radius_twelve():
    R = block_rotation(1.0, fixed=1)
    logs = enumerate_logs(R, 12.0)
    assert sorted(L.coeffs for L in logs) == [(-1,), (0,), (1,)]
    for L in logs:
        assert L.norm <= 12.0
        np.testing.assert_allclose(expm(L.matrix), R, atol=1e-12)


def test_sorted_and_minimal():
    logs = enumerate_logs(block_rotation(0.4, 1.3, fixed=1), 25.0)
    norms = [L.norm for L in logs]
    assert norms == sorted(norms)
    assert logs[0].coeffs == (0, 0)
    assert all(n > norms[0] for n in norms[1:])


def test_norm_matches_matrix(rng):
    R = random_rotation(6, rng)
    for L in enumerate_logs(R, 15.0):
        assert L.norm == pytest.approx(frobenius_norm(L.matrix), abs=1e-10)


def test_every_enumerated_log_verifies(rng):
    for n in (2, 3, 4, 5):
        R = random_rotation(n, rng)
        for L in enumerate_logs(R, 14.0):
            res = verify_general_form(R, L.matrix)
            assert res.ok, res.reason


def test_lattice_closure(rng):
    R = random_rotation(4, rng)
    bases, dirs, _ = lattice_basis(R)
    logs = enumerate_logs(R, 14.0)
    for a in logs[:4]:
        for b in logs[:4]:
            c = [x + y for x, y in zip(a.coeffs, b.coeffs)]
            A = bases[0] + TWO_PI * sum(r * D for r, D in zip(c, dirs))
            np.testing.assert_allclose(expm(A), R, atol=1e-8)


def test_pi_rotation_bases_agree():
    R = block_rotation(1.0, minus=1)
    bases, dirs, angles = lattice_basis(R)
    assert len(bases) == 2
    logs = enumerate_logs(R, 20.0)
    mats = [L.matrix for L in logs]
    for i in range(len(mats)):
        for j in range(i):
            assert frobenius_norm(mats[i] - mats[j]) > 1e-6
    assert sum(1 for L in logs if abs(L.norm - logs[0].norm) < 1e-9) == 2


def test_fixed_plane_direction_added():
    R = block_rotation(1.0, fixed=2)
    bases, dirs, angles = lattice_basis(R)
    assert len(dirs) == 2 and angles[1] == 0.0
    logs = enumerate_logs(R, 10.0)
    assert any(L.coeffs[1] != 0 for L in logs)
    for L in logs:
        np.testing.assert_allclose(expm(L.matrix), R, atol=1e-12)


@pytest.mark.parametrize("theta", [0.3, 1.7, math.pi])
@pytest.mark.parametrize("radius", [0.5, 5.0, 20.0, 41.3])
def test_count_formula_n2(theta, radius):
    R = rot(theta)
    logs = enumerate_logs(R, radius)
    assert len(logs) == closed_form_count(theta, radius)


def test_non_generic_raises():
    with pytest.raises(DomainError):
        enumerate_logs(-np.eye(4), 5.0)
    with pytest.raises(ValueError):
        enumerate_logs(rot(1.0), -1.0)


def test_verify_examples():
    R = rot(math.pi / 2)
    res = verify_general_form(R, math.pi / 2 * E0)
    assert res.ok and all(l == 0 for l in res.ints)

    res = verify_general_form(R, (math.pi / 2 + TWO_PI) * E0)
    assert res.ok and res.ints == [1]
    np.testing.assert_allclose(res.base, math.pi / 2 * E0, atol=1e-12)

    res = verify_general_form(R, math.pi / 3 * E0)
    assert not res.ok and res.reason == "exp_mismatch"


def test_verify_odd_multiples_flip_sign():
    R = rot(math.pi / 2)
    # singular value 3 pi / 2 with factor -E0: eta = pi / 2, k = 1 is odd
    A = (math.pi / 2 - TWO_PI) * E0
    res = verify_general_form(R, A)
    assert res.ok and res.ints == [-1]
    np.testing.assert_allclose(res.base, math.pi / 2 * E0, atol=1e-12)


def test_verify_non_generic_logs(rng):
    # logs of -I_4 built from a random skew orthogonal block and extra 2 pi turns
    Q = random_orthogonal(4, rng)
    J = np.kron(np.eye(2), E0)
    A = 3 * math.pi * (Q @ J @ Q.T)
    res = verify_general_form(-np.eye(4), A)
    assert res.ok
    np.testing.assert_allclose(exp_oracle(res.base), -np.eye(4), atol=1e-12)


def test_verify_rejects_non_skew():
    assert verify_general_form(np.eye(2), np.eye(2)).reason == "not_skew"
    assert verify_general_form(np.eye(2), np.zeros((3, 3))).reason == "dimension_mismatch"


def test_split_angle():
    assert _split_angle(math.pi, 1e-8) == (math.pi, 0)
    eta, k = _split_angle(2.5 * math.pi, 1e-8)
    assert k == 2 and eta == pytest.approx(0.5 * math.pi)
    assert _split_angle(3 * math.pi, 1e-8) == (math.pi, 2)
