"""Tuple classes of quadratic forms, Hermite counting and symmetry planes."""

import numpy as np
import pytest

from elastsym.classifier import random_sample
from elastsym.h4strata import H4Class
from elastsym.quadstrata import (
    QuadTuple,
    TupleKind,
    classify_tuple,
    commutator_vector,
    cowin_mehrabadi,
    cowin_mehrabadi_harmonic,
    elementary_symmetric,
    hankel_matrix,
    hermite_distinct_roots,
    reflection_residual,
    skew,
)
from elastsym.tencore import ElasticityTensor, InvalidInputError, Rotation, rotate


def _rot(g, forms):
    return [g @ f @ g.T for f in forms]


def test_skew_and_commutator_vector():
    rng = np.random.default_rng(0)
    w, x = rng.standard_normal(3), rng.standard_normal(3)
    assert np.allclose(skew(w) @ x, np.cross(w, x))
    a, b = (m + m.T for m in rng.standard_normal((2, 3, 3)))
    assert np.allclose(skew(commutator_vector(a, b)), a @ b - b @ a)


@pytest.mark.parametrize(
    "forms, kind",
    [
        ([np.eye(3)], TupleKind.SO3),
        ([np.diag([1.0, 1.0, -2.0])], TupleKind.O2),
        ([np.diag([1.0, 1.0, -2.0]), np.diag([-3.0, -3.0, 6.0])], TupleKind.O2),
        ([np.diag([1.0, 2.0, -3.0])], TupleKind.D2),
        ([np.diag([1.0, 1.0, -2.0]), np.diag([1.0, -1.0, 0.0])], TupleKind.D2),
        ([np.diag([1.0, 2.0, -3.0]), np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])], TupleKind.Z2),
        ([np.diag([1.0, 2.0, -3.0]), np.ones((3, 3)) - np.diag([1.0, 2.0, 0.0])], TupleKind.TRIV),
    ],
)
def test_tuple_classes_are_rotation_invariant(forms, kind):
    assert classify_tuple(forms).kind is kind
    g = Rotation.random(1).matrix
    tc = classify_tuple(_rot(g, forms))
    assert tc.kind is kind
    if kind is TupleKind.Z2:
        assert np.isclose(abs(tc.axis @ g[:, 2]), 1.0)


def test_small_form_is_judged_against_its_scale():
    a = np.diag([1.0, 2.0, -3.0])
    b = 1e-3 * np.diag([1.0, -1.0, 0.0])
    noise = 1e-13 * np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    assert classify_tuple([a, b + noise], scales=[4.0, 4.0]).kind is TupleKind.D2
    assert classify_tuple([a, b + 1e-6 * noise / 1e-13], scales=[4.0, 4.0]).kind < TupleKind.D2


def test_quad_tuple_rejects_asymmetric():
    with pytest.raises(InvalidInputError):
        QuadTuple((np.arange(9.0).reshape(3, 3),))


@pytest.mark.parametrize(
    "roots, count, real",
    [((1.0, 2.0, 3.0), 3, True), ((1.0, 1.0, 3.0), 2, True), ((2.0, 2.0, 2.0), 1, True)],
)
def test_hermite_counts_real_roots(roots, count, real):
    s = elementary_symmetric(np.diag(roots))
    h = hermite_distinct_roots(*s)
    assert (h.count, h.real) == (count, real)
    assert h.rank == count and h.signature == count


def test_hermite_complex_pair():
    # x^3 - x^2 + x - 1 = (x - 1)(x^2 + 1)
    h = hermite_distinct_roots(1.0, 1.0, 1.0)
    assert h.count == 3 and not h.real
    assert h.signature == 1
    assert np.allclose(hankel_matrix(1.0, 1.0, 1.0), hankel_matrix(1.0, 1.0, 1.0).T)


def test_symmetry_planes_of_members():
    rng = np.random.default_rng(5)
    s = random_sample(H4Class.MONOCLINIC, rng, rotated=False)
    e3 = np.array([0.0, 0.0, 1.0])
    assert cowin_mehrabadi(s.tensor, e3)
    assert cowin_mehrabadi_harmonic(s.tensor, e3)
    assert reflection_residual(s.tensor, e3) < 1e-12
    assert not cowin_mehrabadi(s.tensor, [1.0, 0.0, 0.0])
    g = Rotation.random(6)
    assert cowin_mehrabadi(rotate(s.tensor, g), g.matrix @ e3)


def test_isotropic_tensor_has_every_plane():
    C = ElasticityTensor.isotropic(1.0, 2.0)
    rng = np.random.default_rng(7)
    for n in rng.standard_normal((5, 3)):
        assert cowin_mehrabadi(C, n)


def test_zero_normal_rejected():
    with pytest.raises(InvalidInputError):
        reflection_residual(ElasticityTensor.isotropic(1.0, 1.0), [0.0, 0.0, 0.0])
