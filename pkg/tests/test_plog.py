import math

import numpy as np
import pytest

from ortholog.errors import DomainError, PreconditionError
from ortholog.matcore import E0, block_diag, exp_oracle, frobenius_norm, pfaffian, random_skew, rot
from ortholog.plog import (
    AplogStructure,
    all_principal_logs_generic,
    classify_component,
    is_principal,
    principal_log,
    principal_logs_of,
    sample_aplog,
    w_block,
)
from ortholog.skewsvd import decompose

from oracles import block_rotation, expm, random_orthogonal, random_rotation


def _conj(R, rng):
    Q = random_orthogonal(R.shape[0], rng)
    return Q @ R @ Q.T


def test_identity_has_zero_log():
    d = principal_log(np.eye(3))
    np.testing.assert_array_equal(d.B, np.zeros((3, 3)))
    assert d.structure.kind == "Unique"
    assert d.b1_squared is None


def test_minus_identity_two():
    d = principal_log(-np.eye(2))
    assert d.structure == AplogStructure("TwoPoints", 1, 0, 2)
    logs = principal_logs_of(d)
    got = sorted(np.sign(L[0, 1]) for L in logs)
    assert got == [-1.0, 1.0]
    for L in logs:
        assert min(frobenius_norm(L - math.pi * E0), frobenius_norm(L + math.pi * E0)) <= 1e-10


def test_minus_identity_four():
    s = principal_log(-np.eye(4)).structure
    assert (s.kind, s.mu, s.dim, s.components) == ("Manifold", 2, 2, 2)


@pytest.mark.parametrize("mu, kind, dim", [(0, "Unique", 0), (1, "TwoPoints", 0), (2, "Manifold", 2), (3, "Manifold", 6)])
def test_structure_table(mu, kind, dim, rng):
    R = _conj(block_rotation(1.0, minus=mu, fixed=1), rng)
    s = principal_log(R).structure
    assert (s.kind, s.mu, s.dim) == (kind, mu, dim)


def test_generic_lists():
    R = block_rotation(1.0, 2.0)
    logs = all_principal_logs_generic(R)
    assert len(logs) == 1
    np.testing.assert_allclose(expm(logs[0]), R, atol=1e-13)

    logs = all_principal_logs_generic(-np.eye(2))
    assert len(logs) == 2

    R = block_rotation(1.0, minus=1)
    a, b = all_principal_logs_generic(R)
    for L in (a, b):
        np.testing.assert_allclose(expm(L), R, atol=1e-13)
    diff = a - b
    np.testing.assert_allclose(diff[2:, :], 0, atol=1e-14)
    np.testing.assert_allclose(np.abs(diff[:2, :2]), 2 * math.pi * np.abs(E0), atol=1e-13)

    with pytest.raises(DomainError):
        all_principal_logs_generic(-np.eye(4))


def test_sampling_minus_identity_two():
    samples = sample_aplog(-np.eye(2), 5, seed=3)
    for i, S in enumerate(samples):
        expected = math.pi * E0 if i % 2 == 0 else -math.pi * E0
        np.testing.assert_allclose(S, expected, atol=1e-15)


def test_sampling_minus_identity_four():
    R = -np.eye(4)
    samples = sample_aplog(R, 16, seed=11)
    assert len(samples) == 16
    d = principal_log(R)
    signs = set()
    for S in samples:
        assert frobenius_norm(exp_oracle(S) - R) <= 1e-9 * 4
        assert is_principal(S)
        assert np.trace(S @ S) == pytest.approx(d.tr_sq, abs=1e-9)
        signs.add(classify_component(w_block(S, d)))
        # W^2 = B_1^2
        W = S / math.pi
        np.testing.assert_allclose(W @ W, d.b1_squared, atol=1e-12)
    assert signs == {1, -1}


def test_sampling_only_touches_pi_block(rng):
    R = block_rotation(1.0, minus=1)
    d = principal_log(R)
    for S in sample_aplog(R, 6, seed=rng):
        diff = S - d.B
        np.testing.assert_allclose(diff[2:, :], 0, atol=1e-13)
        np.testing.assert_allclose(diff[:, 2:], 0, atol=1e-13)


def test_sampling_is_deterministic():
    a = sample_aplog(-np.eye(6), 4, seed=5)
    b = sample_aplog(-np.eye(6), 4, seed=5)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def test_sampling_needs_minus_one():
    with pytest.raises(DomainError):
        sample_aplog(rot(1.0), 3, seed=0)


@pytest.mark.parametrize("W, sign", [(E0, 1), (-E0, -1), (block_diag(E0, -E0), -1)])
def test_classify_component(W, sign):
    assert classify_component(W) == sign


def test_classify_component_rejects():
    with pytest.raises(PreconditionError):
        classify_component(2 * E0)


def test_precondition():
    with pytest.raises(PreconditionError):
        principal_log(np.diag([1.0, -1.0]))


def test_round_trip_random(rng):
    for _ in range(200):
        n = int(rng.integers(2, 11))
        R = random_rotation(n, rng)
        d = principal_log(R)
        assert frobenius_norm(exp_oracle(d.B) - R) <= 1e-8 * n
        assert is_principal(d.B)
        tr = -2.0 * sum(m * t * t for m, t in zip(d.system.mults, d.system.zetas))
        assert d.tr_sq == pytest.approx(tr, abs=1e-8)


def test_b1_identity_on_constructed_inputs(rng):
    for mu in (1, 2, 3):
        R = _conj(block_rotation(0.5, 2.0, minus=mu, fixed=1), rng)
        d = principal_log(R)
        F = d.system.factors[0]
        np.testing.assert_allclose(d.b1_squared, F @ F, atol=1e-12)
        for S in sample_aplog(R, 4, seed=rng):
            W = (S - (d.B - math.pi * F)) / math.pi
            np.testing.assert_allclose(W @ W, d.b1_squared, atol=1e-11)


def test_minimality(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        R = exp_oracle(random_skew(n, rng, norm=rng.uniform(0.5, 2.5)))
        d = principal_log(R)
        k = len(d.system)
        r = rng.integers(-2, 3, size=k)
        A = d.B + 2 * math.pi * sum(int(c) * F for c, F in zip(r, d.system.factors))
        np.testing.assert_allclose(expm(A), R, atol=1e-8 * n * max(1.0, frobenius_norm(A)))
        trA, trB = np.trace(A @ A), d.tr_sq
        if np.any(r):
            assert trA < trB - 1e-6
        else:
            assert frobenius_norm(A - d.B) <= 1e-12


def test_is_principal():
    assert is_principal(math.pi * E0)
    assert not is_principal(4.0 * E0)
    assert is_principal(np.zeros((3, 3)))


def test_descriptor_system_is_decomposition_of_B(rng):
    R = random_rotation(6, rng)
    d = principal_log(R)
    s = decompose(d.B)
    np.testing.assert_allclose(s.zetas, d.system.zetas, atol=1e-10)
