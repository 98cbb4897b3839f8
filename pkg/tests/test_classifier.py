"""End-to-end classification, certificates and sample generation."""

import numpy as np
import pytest

from elastsym.classifier import (
    Certificate,
    DegenerateParametersError,
    LowParts,
    Tolerances,
    add_noise,
    classify,
    degeneracy_margins,
    digest,
    generate_sample,
    random_sample,
)
from elastsym.h4strata import H4Class
from elastsym.tencore import (
    Deviator,
    ElasticityTensor,
    HarmonicDecomposition,
    InvalidInputError,
    Rotation,
    harmonic_recompose,
    rotate,
)


@pytest.mark.parametrize("cls", list(H4Class))
def test_rotated_samples_are_recovered(cls):
    rng = np.random.default_rng(hash(cls.label) % 2**32)
    for _ in range(10):
        s = random_sample(cls, rng)
        c = classify(s.tensor)
        assert c.cls is cls, (s.params, c.residual_summary())
        assert c.mga_ok


@pytest.mark.parametrize("cls", list(H4Class))
def test_verdict_is_rotation_invariant(cls):
    rng = np.random.default_rng(3)
    s = random_sample(cls, rng, rotated=False)
    for k in range(3):
        assert classify(rotate(s.tensor, Rotation.random(k))).cls is cls


def test_certificate_contents():
    s = random_sample(H4Class.TRIGONAL, np.random.default_rng(0))
    c = classify(s.tensor)
    assert isinstance(c, Certificate)
    assert c.branch == "h4" and c.digest == digest(s.tensor)
    assert c.params["delta"] == pytest.approx(s.params["delta"], rel=1e-8)
    assert c.params["sigma"] == pytest.approx(abs(s.params["sigma"]), rel=1e-8)
    d = c.as_dict()
    assert d["class"] == "trigonal" and d["group"] == "D3"
    assert d["residuals"]["h4.trigonal"] <= 1e-8
    assert d["tolerances"] == {"syzygy": 1e-8, "zero": 1e-10, "rot": 1e-10}


def test_isotropic_and_zero_harmonic_branch():
    c = classify(ElasticityTensor.isotropic(2.0, 1.0))
    assert c.cls is H4Class.ISOTROPIC and c.branch == "zero-harmonic"
    low = LowParts(1.0, 1.0, np.diag([1.0, 1.0, -2.0]), np.zeros((3, 3)))
    c = classify(_ti_low_only(low))
    assert c.cls is H4Class.TRANSVERSE and c.branch == "zero-harmonic"


def _ti_low_only(low):
    return harmonic_recompose(HarmonicDecomposition(low.lam, low.mu, Deviator(low.a), Deviator(low.b)))


def test_inconsistent_tuple_is_flagged():
    # a cubic D with an axial deviator: the tuple is O2, which does not contain O
    low = LowParts(1.0, 1.0, np.diag([1.0, 1.0, -2.0]), np.zeros((3, 3)))
    c = classify(generate_sample(H4Class.CUBIC, {"delta": 1.0}, lowparts=low))
    assert c.cls is H4Class.CUBIC
    assert c.tuple_class.name == "O2"
    assert not c.mga_ok
    assert any("genericity" in w for w in c.warnings)


def test_small_noise_is_tolerated_and_large_noise_is_not():
    rng = np.random.default_rng(4)
    s = random_sample(H4Class.CUBIC, rng)
    assert classify(add_noise(s.tensor, 1e-11, rng)).cls is H4Class.CUBIC
    assert classify(add_noise(s.tensor, 1e-4, rng)).cls is H4Class.TRICLINIC
    loose = Tolerances(syzygy=1e-2)
    assert classify(add_noise(s.tensor, 1e-5, rng), loose).cls is H4Class.CUBIC


def test_tolerances_validated():
    with pytest.raises(InvalidInputError):
        Tolerances(syzygy=-1.0)
    with pytest.raises(InvalidInputError):
        Tolerances(zero=float("nan"))


@pytest.mark.parametrize(
    "cls, params, actual",
    [
        (H4Class.ORTHOTROPIC, {"lambda1": 1.0, "lambda2": 1.0, "lambda3": -0.5}, H4Class.TETRAGONAL),
        (H4Class.ORTHOTROPIC, {"lambda1": 1.0, "lambda2": 1.0, "lambda3": 1.0}, H4Class.CUBIC),
        (H4Class.TRIGONAL, {"delta": 1.0, "sigma": 0.0}, H4Class.TRANSVERSE),
        (H4Class.TRIGONAL, {"delta": 1.0, "sigma": -np.sqrt(50.0)}, H4Class.CUBIC),
        (H4Class.TETRAGONAL, {"delta": -1.0, "sigma": 5.0}, H4Class.CUBIC),
    ],
)
def test_degenerate_parameters_name_the_actual_class(cls, params, actual):
    with pytest.raises(DegenerateParametersError) as e:
        generate_sample(cls, params)
    assert e.value.actual is actual
    assert actual.label in str(e.value)


def test_cubic_locus_margin_is_symmetric():
    m = [
        degeneracy_margins(H4Class.TETRAGONAL, {"delta": d, "sigma": s})["cubic"]
        for d, s in ((1.0, 5.0), (1.0, -5.0), (-1.0, 5.0), (-1.0, -5.0))
    ]
    assert np.allclose(m, 0.0, atol=1e-15)


def test_margin_is_enforced():
    with pytest.raises(DegenerateParametersError):
        generate_sample(H4Class.ORTHOTROPIC, {"lambda1": 1.0, "lambda2": 0.95, "lambda3": -2.0}, margin=0.1)


def test_monoclinic_profile_is_checked():
    with pytest.raises(InvalidInputError):
        generate_sample(H4Class.MONOCLINIC, {"h2": 1.0})
    with pytest.raises(InvalidInputError):
        generate_sample(H4Class.ISOTROPIC, {"delta": 1.0})


def test_strict_mga_flag():
    s = random_sample(H4Class.ORTHOTROPIC, np.random.default_rng(5))
    c = classify(s.tensor, strict_mga=True)
    assert c.strict_tuple_class is not None
    assert c.cls is H4Class.ORTHOTROPIC


def test_samples_are_reproducible():
    a = random_sample(H4Class.TRICLINIC, np.random.default_rng(9))
    b = random_sample(H4Class.TRICLINIC, np.random.default_rng(9))
    assert np.array_equal(a.tensor.voigt, b.tensor.voigt)
    assert a.provenance() == b.provenance()
