"""Covariants, invariants, characteristic polynomial and the Betten identity."""

import numpy as np
import pytest

from elastsym.invariants import (
    DEGREES,
    InvariantVector,
    ZeroTensorError,
    betten_identity_residual,
    boehler_invariants,
    characteristic_polynomial,
    charpoly_from_invariants,
    covariants,
    normalize,
)
from elastsym.tencore import Harmonic4, Rotation


def test_invariants_are_rotation_invariant():
    rng = np.random.default_rng(0)
    D = Harmonic4(rng.standard_normal(9))
    J = boehler_invariants(D).values
    Jr = boehler_invariants(D.rotated(Rotation.random(1))).values
    assert np.allclose(Jr, J, rtol=1e-11, atol=1e-11 * np.abs(J).max())


def test_covariants_are_equivariant_and_traced():
    rng = np.random.default_rng(2)
    D = Harmonic4(rng.standard_normal(9))
    g = Rotation.random(3).matrix
    c, cr = covariants(D), covariants(D.rotated(g))
    for a, b in zip(c.as_list(), cr.as_list()):
        assert np.allclose(b, g @ a @ g.T, atol=1e-10 * max(1.0, np.abs(a).max()))
        assert np.allclose(a, a.T)
    assert np.allclose(c.traces(), boehler_invariants(D).values)


def test_homogeneity():
    rng = np.random.default_rng(4)
    D = Harmonic4(rng.standard_normal(9))
    J = boehler_invariants(D).values
    J2 = boehler_invariants(D.scaled(2.0)).values
    assert np.allclose(J2, J * 2.0 ** np.array(DEGREES))


def test_j2_is_squared_norm():
    rng = np.random.default_rng(5)
    D = Harmonic4(rng.standard_normal(9))
    assert np.isclose(boehler_invariants(D)[2], np.sum(D.full**2))


def test_characteristic_polynomial_matches_eigenvalues():
    rng = np.random.default_rng(6)
    D = Harmonic4(rng.standard_normal(9))
    ref = np.poly(np.linalg.eigvalsh(D.kelvin))
    assert np.allclose(charpoly_from_invariants(boehler_invariants(D)), ref, atol=1e-10 * np.abs(ref).max())
    cp = characteristic_polynomial(D)
    assert len(cp) > 0


def test_betten_identity():
    rng = np.random.default_rng(7)
    D = Harmonic4(rng.standard_normal(9))
    assert betten_identity_residual(D, [(1.0, 1.0), (-0.5, 2.0), (3.0, 0.25)]) < 1e-9


def test_betten_isotropic_example():
    # D = 0 and lambda = mu = 1: Kelvin eigenvalues 5 and five times 2, det(-C) = 160
    assert betten_identity_residual(Harmonic4.zero(), [(1.0, 1.0)]) < 1e-12


def test_normalize_zero_tensor():
    J = boehler_invariants(Harmonic4.zero(), scale=1.0)
    assert J.is_zero()
    with pytest.raises(ZeroTensorError):
        normalize(J)


def test_normalize_is_scale_free():
    rng = np.random.default_rng(8)
    D = Harmonic4(rng.standard_normal(9))
    a = normalize(boehler_invariants(D)).as_dict()
    b = normalize(boehler_invariants(D.scaled(7.0))).as_dict()
    assert a.keys() == b.keys()
    assert all(np.isclose(a[k], b[k]) for k in a)
    assert isinstance(boehler_invariants(D), InvariantVector)
