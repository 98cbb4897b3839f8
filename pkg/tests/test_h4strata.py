"""Stratum tests on the invariants of the harmonic part."""

import numpy as np
import pytest

from elastsym import h4strata as h4
from elastsym import relations as R
from elastsym.classifier import random_sample
from elastsym.h4strata import H4Class, NoNormalFormError
from elastsym.invariants import InvariantVector, boehler_invariants
from elastsym.tencore import Harmonic4, Rotation, harmonic_decompose

SLICES = {
    H4Class.CUBIC: {"delta": 1.3},
    H4Class.TRANSVERSE: {"delta": -0.8},
    H4Class.TRIGONAL: {"delta": 0.6, "sigma": 1.1},
    H4Class.TETRAGONAL: {"delta": -0.4, "sigma": 0.9},
    H4Class.ORTHOTROPIC: {"lambda1": 0.9, "lambda2": -0.2, "lambda3": 0.4},
}


def test_lattice():
    assert H4Class.TRICLINIC.leq(H4Class.ISOTROPIC)
    assert H4Class.ORTHOTROPIC.leq(H4Class.CUBIC)
    assert not H4Class.TRIGONAL.leq(H4Class.TETRAGONAL)
    assert not H4Class.ORTHOTROPIC.leq(H4Class.TRIGONAL)
    assert not H4Class.TRANSVERSE.leq(H4Class.CUBIC)
    assert H4Class.from_label("D3") is H4Class.TRIGONAL
    assert H4Class.from_label("transversely isotropic") is H4Class.TRANSVERSE
    with pytest.raises(ValueError):
        H4Class.from_label("hexagonal-ish")


@pytest.mark.parametrize("cls", list(SLICES))
def test_normal_forms_are_classified_and_rotation_invariant(cls):
    D = h4.normal_form(cls, **SLICES[cls])
    for g in (np.eye(3), Rotation.random(11).matrix):
        v = h4.classify_h4(boehler_invariants(D.rotated(g)))
        assert v.best is not None and v.best.cls is cls


@pytest.mark.parametrize("cls", list(SLICES))
def test_reconstruction_reproduces_invariants(cls):
    D = h4.normal_form(cls, **SLICES[cls]).rotated(Rotation.random(12))
    J = boehler_invariants(D)
    r = h4.classify_h4(J).best
    D2 = h4.reconstruct_normal_form(r)
    assert h4.normalized_distance(boehler_invariants(D2), J) < 1e-9


def test_isotropic_and_generic():
    assert h4.classify_h4(boehler_invariants(Harmonic4.zero(), scale=1.0)).best.cls is H4Class.ISOTROPIC
    rng = np.random.default_rng(0)
    assert h4.classify_h4(boehler_invariants(Harmonic4(rng.standard_normal(9)))).best is None


def test_closed_strata_contain_higher_classes():
    J = h4.invariants_of_normal_form(H4Class.CUBIC, delta=1.0)
    res = h4.test_all(J)
    for cls in (H4Class.TRIGONAL, H4Class.TETRAGONAL, H4Class.ORTHOTROPIC):
        assert res[cls].member
        assert not res[cls].strict
    assert not res[H4Class.TRANSVERSE].member


def test_trigonal_parameters_recovered():
    J = h4.invariants_of_normal_form(H4Class.TRIGONAL, delta=0.6, sigma=-1.1)
    p = h4.test_trigonal(J).slice_params
    assert p["delta"] == pytest.approx(0.6) and p["sigma"] == pytest.approx(1.1)


def test_inequality_rejects_complex_sigma():
    # sigma^2 < 0: the D3 relations hold but the point is not a real tensor
    vals = np.real(np.array(R.trigonal_parametric(1.0, 0.8j), dtype=complex))
    r = h4.test_trigonal(InvariantVector(vals))
    assert not r.member
    assert min(r.inequality_margins.values()) < 0


def test_bifurcation_path_near_cubic():
    D = h4.normal_form(H4Class.TRIGONAL, delta=1.0, sigma=np.sqrt(50.0) * 1.001)
    path = dict(h4.bifurcation_path(boehler_invariants(D)))
    assert min(path, key=path.get) == "D3->O"


def test_generated_members_pass_their_test():
    rng = np.random.default_rng(1)
    for cls in SLICES:
        for _ in range(10):
            D = harmonic_decompose(random_sample(cls, rng).tensor).D
            assert h4.classify_h4(boehler_invariants(D)).best.cls is cls


def test_unknown_normal_form():
    with pytest.raises((NoNormalFormError, KeyError, TypeError, ValueError)):
        h4.normal_form(H4Class.MONOCLINIC, delta=1.0)
