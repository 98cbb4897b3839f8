"""Tensor representations, rotations and the harmonic decomposition."""

import numpy as np
import pytest

from elastsym.tencore import (
    Deviator,
    ElasticityTensor,
    Harmonic4,
    HarmonicDecomposition,
    InvalidInputError,
    InvalidPartError,
    InvalidRotationError,
    Rotation,
    harmonic_decompose,
    harmonic_recompose,
    is_totally_symmetric,
    isotropic_kelvin,
    rotate,
)


def _random_tensor(rng):
    m = rng.standard_normal((6, 6))
    return ElasticityTensor(m + m.T + 12 * np.eye(6))


def test_kelvin_round_trip():
    rng = np.random.default_rng(0)
    C = _random_tensor(rng)
    assert np.allclose(ElasticityTensor.from_kelvin(C.kelvin).voigt, C.voigt, atol=1e-14)
    assert np.allclose(ElasticityTensor.from_full(C.full).voigt, C.voigt, atol=1e-14)
    assert np.isclose(C.norm(), np.linalg.norm(C.full))


def test_components_round_trip():
    rng = np.random.default_rng(1)
    C = _random_tensor(rng)
    assert C.components.shape == (21,)
    assert np.array_equal(ElasticityTensor.from_components(C.components).voigt, C.voigt)


def test_isotropic_kelvin():
    C = ElasticityTensor.isotropic(2.0, 3.0)
    assert np.allclose(C.kelvin, isotropic_kelvin(2.0, 3.0))


def test_asymmetric_input_names_entries():
    m = np.eye(6)
    m[0, 4] = 1.0
    with pytest.raises(InvalidInputError, match=r"\(1,5\).*\(5,1\)"):
        ElasticityTensor(m)


def test_non_finite_rejected():
    m = np.eye(6)
    m[2, 2] = np.nan
    with pytest.raises(InvalidInputError):
        ElasticityTensor(m)


def test_rotation_validation():
    with pytest.raises(InvalidRotationError):
        Rotation(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(InvalidRotationError):
        Rotation(2 * np.eye(3))
    g = Rotation.random(3).matrix
    assert np.allclose(g.T @ g, np.eye(3))
    assert np.isclose(np.linalg.det(g), 1.0)


def test_rotation_is_a_group_action():
    rng = np.random.default_rng(2)
    C = _random_tensor(rng)
    g, h = Rotation.random(4), Rotation.random(5)
    lhs = rotate(rotate(C, h), g)
    rhs = rotate(C, Rotation(g.matrix @ h.matrix))
    assert np.allclose(lhs.voigt, rhs.voigt, atol=1e-12)
    assert np.isclose(rotate(C, g).norm(), C.norm())


def test_deviator_trace_check():
    with pytest.raises(InvalidPartError):
        Deviator(np.eye(3))
    d = Deviator.dev(np.diag([1.0, 2.0, 6.0]))
    assert abs(np.trace(d.matrix)) < 1e-15


def test_harmonic_part_is_totally_symmetric_and_traceless():
    rng = np.random.default_rng(6)
    D = Harmonic4(rng.standard_normal(9))
    t = D.full
    assert is_totally_symmetric(t)
    assert np.allclose(np.einsum("iikl->kl", t), 0.0, atol=1e-14)
    assert np.allclose(Harmonic4.from_kelvin(D.kelvin).h, D.h)


def test_decomposition_round_trip_and_equivariance():
    rng = np.random.default_rng(7)
    C = _random_tensor(rng)
    parts = harmonic_decompose(C)
    assert np.allclose(harmonic_recompose(parts).voigt, C.voigt, atol=1e-12)
    g = Rotation.random(8)
    rp = harmonic_decompose(rotate(C, g))
    ref = parts.rotated(g)
    assert np.isclose(rp.lam, parts.lam) and np.isclose(rp.mu, parts.mu)
    assert np.allclose(rp.a.matrix, ref.a.matrix, atol=1e-12)
    assert np.allclose(rp.b.matrix, ref.b.matrix, atol=1e-12)
    assert np.allclose(rp.D.h, ref.D.h, atol=1e-12)


def test_decomposition_of_isotropic_tensor():
    parts = harmonic_decompose(ElasticityTensor.isotropic(1.5, 0.75))
    assert np.isclose(parts.lam, 1.5) and np.isclose(parts.mu, 0.75)
    assert parts.a.norm() < 1e-14 and parts.b.norm() < 1e-14 and parts.D.norm() < 1e-14


def test_recompose_rejects_wrong_part_types():
    with pytest.raises(InvalidPartError):
        harmonic_recompose(HarmonicDecomposition(1.0, 1.0, np.zeros((3, 3))))
