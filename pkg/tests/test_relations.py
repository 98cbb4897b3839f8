"""The relation polynomials: parsing, weights and the orthotropic inequality."""

import numpy as np
import pytest

from elastsym import h4strata as h4
from elastsym import relations as R
from elastsym._poly import Poly, PolyBatch
from elastsym.h4strata import H4Class
from elastsym.invariants import boehler_invariants
from elastsym.quadstrata import hermite_minors


def test_poly_parse_and_evaluate():
    p = Poly.parse("3 J2^2 - J4 + 2")
    assert p.evaluate({"J2": 2.0, "J4": 5.0}) == pytest.approx(9.0)
    assert p.derivative("J2").evaluate({"J2": 2.0}) == pytest.approx(12.0)
    q = Poly.parse("J2^3 = 2 J3")
    assert q.evaluate({"J2": 2.0, "J3": 4.0}) == pytest.approx(0.0)


def test_poly_batch_matches_scalar_evaluation():
    polys = [Poly.parse(s) for s in (R.SIGMA_REALITY, R.ORTHO_DISCRIMINANT, R.ORTHO_N2)]
    names = [f"J{k}" for k in range(2, 11)]
    rng = np.random.default_rng(0)
    x = rng.standard_normal(9)
    v = dict(zip(names, x))
    assert np.allclose(PolyBatch(polys, names).evaluate(x), [p.evaluate(v) for p in polys])


@pytest.mark.parametrize("family", [R.CUBIC, R.TRANSVERSE, R.TRIGONAL, R.TETRAGONAL, R.ORTHOTROPIC])
def test_relations_are_weighted_homogeneous(family):
    for p in family:
        assert len(p.weights(R.J_WEIGHTS)) == 1


def test_n2_matches_hermite_minor():
    rng = np.random.default_rng(3)
    n2, disc = Poly.parse(R.ORTHO_N2), Poly.parse(R.ORTHO_DISCRIMINANT)
    for _ in range(20):
        lam = rng.standard_normal(3)
        D = h4.normal_form(H4Class.ORTHOTROPIC, lambda1=lam[0], lambda2=lam[1], lambda3=lam[2])
        v = h4._raw(boehler_invariants(D))
        minor = hermite_minors(*h4.ortho_sigmas(v))[1]
        ref = 14.0 * disc.evaluate(v) ** 2 * minor
        # N2 cancels heavily; compare against the size of its terms
        size = np.sum(np.abs(n2.term_values(v)))
        assert abs(n2.evaluate(v) - ref) <= 1e-11 * size
        assert ref >= 0.0


def test_parametric_forms_reproduce_normal_forms():
    for cls, para in ((H4Class.TRIGONAL, R.trigonal_parametric), (H4Class.TETRAGONAL, R.tetragonal_parametric)):
        J = h4.invariants_of_normal_form(cls, delta=0.7, sigma=-1.3).values
        assert np.allclose(J, para(0.7, -1.3), rtol=1e-12)
