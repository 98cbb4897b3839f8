"""Symmetry class of an elasticity tensor and generation of test samples.

The pipeline splits ``C`` into ``(lambda, mu, a, b, D)`` and classifies the
tuple ``L = (a, b, d2(D))`` of quadratic forms.  A trivial tuple forces the
triclinic class, a ``Z2`` tuple leaves monoclinic or triclinic (decided by a
symmetry-plane test along its axis) and a tuple of class at least ``D2``
hands the decision to the invariants of ``D``, assuming that the low-order
parts do not break the symmetry of ``D`` further.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import h4strata as h4
from .h4strata import H4Class
from .invariants import InvariantVector, covariants
from .quadstrata import (
    TupleClass,
    TupleKind,
    classify_tuple,
    cowin_mehrabadi_residuals,
)
from .tencore import (
    Deviator,
    ElasticityTensor,
    Harmonic4,
    HarmonicDecomposition,
    InvalidInputError,
    Rotation,
    as_rotation,
    harmonic_decompose,
    harmonic_recompose,
    rotate,
)

DEFAULT_MARGIN = 0.1

_TUPLE_TO_CLASS = {
    TupleKind.SO3: H4Class.ISOTROPIC,
    TupleKind.O2: H4Class.TRANSVERSE,
    TupleKind.D2: H4Class.ORTHOTROPIC,
    TupleKind.Z2: H4Class.MONOCLINIC,
    TupleKind.TRIV: H4Class.TRICLINIC,
}


class DegenerateParametersError(ValueError):
    """The requested parameters produce a tensor of another class."""

    def __init__(self, message: str, actual: H4Class | None):
        super().__init__(message)
        self.actual = actual


@dataclass(frozen=True)
class Tolerances:
    """Tolerance profile.

    Attributes
    ----------
    syzygy
        Relative tolerance of every relation, commutator and plane test.
    zero
        Relative size below which invariants are treated as those of a zero tensor.
    rot
        Orthogonality tolerance for user-supplied rotations.
    """

    syzygy: float = 1e-8
    zero: float = 1e-10
    rot: float = 1e-10

    def __post_init__(self):
        for name in ("syzygy", "zero", "rot"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise InvalidInputError(f"tolerance {name} must be a positive number, got {v!r}")

    def as_dict(self) -> dict[str, float]:
        return {"syzygy": self.syzygy, "zero": self.zero, "rot": self.rot}


@dataclass(frozen=True)
class PlaneTest:
    """Symmetry-plane test along a candidate normal."""

    normal: NDArray
    residuals: NDArray
    passed: bool

    def as_dict(self) -> dict:
        return {"normal": self.normal.tolist(), "residuals": self.residuals.tolist(), "passed": self.passed}


@dataclass(frozen=True)
class Certificate:
    """Verdict of :func:`classify` together with the evidence behind it.

    ``branch`` names the path taken: ``"triclinic-tuple"``, ``"z2-tuple"``,
    ``"zero-harmonic"``, ``"h4"`` or ``"h4-below-d2"``.  ``mga_ok`` is False
    when the evidence contradicts the genericity assumption, in which case
    only ``G_C`` contained in ``G_D`` is guaranteed.
    """

    digest: str
    cls: H4Class
    branch: str
    tuple_class: TupleClass
    plane_test: PlaneTest | None
    h4: h4.H4Verdict | None
    invariants: InvariantVector
    mga_ok: bool
    tolerances: Tolerances
    params: dict[str, float] = field(default_factory=dict)
    pruning: dict[str, float] = field(default_factory=dict)
    strict_tuple_class: TupleClass | None = None
    warnings: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return self.cls.label

    def residual_summary(self) -> dict[str, float]:
        out: dict[str, float] = {f"tuple.{k}": float(v) for k, v in self.tuple_class.residuals.items()}
        if self.plane_test is not None:
            out["plane"] = float(np.max(self.plane_test.residuals))
        if self.h4 is not None:
            out.update({f"h4.{c.label}": float(r.residual) for c, r in self.h4.results.items()})
        out.update({f"pruning.{k}": float(v) for k, v in self.pruning.items()})
        return out

    def as_dict(self) -> dict:
        """Plain-data form used by the command-line reports."""
        J = self.invariants
        zero = J.is_zero(self.tolerances.zero)
        out = {
            "digest": self.digest,
            "class": self.cls.label,
            "group": self.cls.group,
            "branch": self.branch,
            "mga_ok": self.mga_ok,
            "tuple_class": self.tuple_class.name,
            "tuple_axis": None if self.tuple_class.axis is None else self.tuple_class.axis.tolist(),
            "plane_test": None if self.plane_test is None else self.plane_test.as_dict(),
            "invariants": {
                "raw": J.as_dict(),
                "normalized": None if zero else {n: v for n, v in h4._normalized(J).items()},
                "scale": J.scale,
            },
            "strata": None if self.h4 is None else {c.label: r.summary() for c, r in self.h4.results.items()},
            "params": dict(self.params),
            "residuals": self.residual_summary(),
            "tolerances": self.tolerances.as_dict(),
            "warnings": list(self.warnings),
        }
        if self.strict_tuple_class is not None:
            out["strict_tuple_class"] = self.strict_tuple_class.name
        return out


def digest(C: ElasticityTensor) -> str:
    """SHA-256 of the 21 independent Voigt components as little-endian doubles."""
    return hashlib.sha256(np.ascontiguousarray(C.components, dtype="<f8").tobytes()).hexdigest()


def _plane_test(C: ElasticityTensor, n: NDArray, tol: float) -> PlaneTest:
    r = cowin_mehrabadi_residuals(C, n)
    return PlaneTest(np.asarray(n, dtype=float), r, bool(np.all(r <= tol)))


def _z2_fallback(C: ElasticityTensor, parts: HarmonicDecomposition, tol: float) -> tuple[H4Class, PlaneTest | None]:
    """Monoclinic or triclinic when ``D`` lies below ``D2``: look for a common axis of every covariant."""
    forms = [parts.a.matrix, parts.b.matrix] + covariants(parts.D).as_list()
    sc = C.norm()
    scales = [sc, sc] + [np.linalg.norm(f) for f in forms[2:]]
    tc = classify_tuple(forms, tol, scales)
    candidates: list[NDArray] = []
    if tc.axis is not None:
        candidates.append(tc.axis)
    elif tc.frame is not None:
        candidates.extend(tc.frame.T)
    best: PlaneTest | None = None
    for n in candidates:
        pt = _plane_test(C, n, tol)
        if best is None or np.max(pt.residuals) < np.max(best.residuals):
            best = pt
        if pt.passed:
            return H4Class.MONOCLINIC, pt
    return H4Class.TRICLINIC, best


def classify(C: ElasticityTensor, tol: Tolerances | None = None, strict_mga: bool = False) -> Certificate:
    """Symmetry class of ``C``.

    Parameters
    ----------
    C
        The elasticity tensor.
    tol
        Tolerance profile; defaults to :class:`Tolerances` ().
    strict_mga
        Also compare the class of ``(a, b, d2)`` with that of ``d2`` alone
        and flag a mismatch.

    Returns
    -------
    Certificate
    """
    tol = tol or Tolerances()
    ts = tol.syzygy
    parts = harmonic_decompose(C)
    sc = C.norm()
    cov = covariants(parts.D)
    J = InvariantVector(cov.traces(), sc)
    warnings: list[str] = []
    pruning: dict[str, float] = {}
    dig = digest(C)

    d_zero = parts.D.norm() <= ts * sc
    d2 = cov.d2
    forms = [parts.a.matrix, parts.b.matrix]
    scales = [sc, sc]
    if not d_zero:
        forms.append(d2)
        scales.append(float(np.linalg.norm(d2)))
    tc = classify_tuple(forms, ts, scales)

    def cert(cls, branch, plane=None, verdict=None, mga_ok=True, params=None, strict_tc=None):
        return Certificate(
            dig, cls, branch, tc, plane, verdict, J, mga_ok, tol,
            params or {}, pruning, strict_tc, tuple(warnings),
        )

    if tc.kind is TupleKind.TRIV:
        return cert(H4Class.TRICLINIC, "triclinic-tuple")
    if tc.kind is TupleKind.Z2:
        pt = _plane_test(C, tc.axis, ts)
        cls = H4Class.MONOCLINIC if pt.passed else H4Class.TRICLINIC
        return cert(cls, "z2-tuple", plane=pt)
    if d_zero:
        return cert(_TUPLE_TO_CLASS[tc.kind], "zero-harmonic")

    verdict = h4.classify_h4(J, ts, tol.zero)
    mga_ok = True
    strict_tc = None
    if strict_mga:
        strict_tc = classify_tuple([d2], ts)
        if strict_tc.kind is not tc.kind:
            mga_ok = False
            warnings.append(
                f"strict MGA check: class of (a, b, d2) is {tc.name} but class of d2 alone is {strict_tc.name}"
            )

    if verdict.cls is None:
        cls, pt = _z2_fallback(C, parts, ts)
        warnings.append(f"D lies below D2 although the quadratic tuple is {tc.name}; decided by a plane test")
        return cert(cls, "h4-below-d2", plane=pt, verdict=verdict, mga_ok=mga_ok, strict_tc=strict_tc)

    cls = verdict.cls
    upper = _TUPLE_TO_CLASS[tc.kind]
    consistent = cls.leq(upper)
    if tc.kind is TupleKind.SO3:
        j = h4._normalized(J)
        pruning["J2^2-3J4"] = abs(1.0 - 3.0 * j["J4"])
        consistent &= pruning["J2^2-3J4"] <= ts
        consistent &= cls not in (H4Class.TRIGONAL, H4Class.TETRAGONAL, H4Class.TRANSVERSE)
    if not consistent:
        mga_ok = False
        warnings.append(
            f"tuple class {tc.name} is incompatible with the {cls.label} class of D; "
            "the genericity assumption fails and only G_C contained in G_D is guaranteed"
        )
    best = verdict.best
    if best is not None:
        warnings.extend(best.notes)
    params = {k: float(v) for k, v in (best.slice_params if best is not None else {}).items()}
    return cert(cls, "h4", verdict=verdict, mga_ok=mga_ok, params=params, strict_tc=strict_tc)


def nearest_class(J: InvariantVector, tol: Tolerances | None = None) -> tuple[H4Class, float] | None:
    """Highest class whose relations ``D`` satisfies, or the finite class with the smallest residual.

    Used as a hint when the low-order parts pull the verdict below the class
    of ``D``.  Returns None when ``D`` is numerically zero.
    """
    tol = tol or Tolerances()
    if J.is_zero(tol.zero):
        return None
    verdict = h4.classify_h4(J, tol.syzygy, tol.zero)
    if verdict.cls is not None:
        return verdict.cls, float(verdict.best.residual)
    cands = [(c, r.residual) for c, r in verdict.results.items() if c is not H4Class.ISOTROPIC]
    c, r = min(cands, key=lambda t: t[1])
    return c, float(r)


# ---------------------------------------------------------------- samples


@dataclass(frozen=True)
class LowParts:
    """Isotropic scalars and the two deviators added to a harmonic part."""

    lam: float = 1.0
    mu: float = 1.0
    a: NDArray = field(default_factory=lambda: np.zeros((3, 3)))
    b: NDArray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        for name in ("a", "b"):
            m = Deviator(np.asarray(getattr(self, name), dtype=float)).matrix
            object.__setattr__(self, name, m)

    def as_dict(self) -> dict:
        return {"lambda": self.lam, "mu": self.mu, "a": self.a.tolist(), "b": self.b.tolist()}


_H4_FROM_PROFILE = {H4Class.MONOCLINIC, H4Class.TRICLINIC}
_Z2_H = (0, 2, 6, 7, 8)  # h1, h3, h7, h8, h9 survive a half-turn about e3


def _harmonic_part(cls: H4Class, params: Mapping[str, float]) -> Harmonic4:
    if cls in _H4_FROM_PROFILE:
        h = np.zeros(9)
        for k in range(9):
            h[k] = float(params.get(f"h{k + 1}", 0.0))
        return Harmonic4(h)
    return h4.normal_form(cls, **{k: float(v) for k, v in params.items()})


def _rel_line_distance(x: NDArray, direction: NDArray) -> float:
    return h4._ray_distance(np.asarray(x, dtype=float), np.asarray(direction, dtype=float))


def _dihedral_coords(cls: H4Class, d: float, s: float) -> tuple[NDArray, NDArray]:
    """Isometric coordinates of ``(|delta|, |sigma|)`` and the direction of the cubic ray.

    ``sigma -> -sigma`` is realized by a rotation in the normalizer and
    ``D -> -D`` keeps the class, so the cubic locus is the pair of lines
    ``sigma = +-c delta``; taking absolute values folds it onto one ray.
    """
    w = 4.0 if cls is H4Class.TRIGONAL else np.sqrt(8.0)
    c = np.sqrt(50.0) if cls is H4Class.TRIGONAL else 5.0
    return np.array([np.sqrt(280.0) * abs(d), w * abs(s)]), np.array([np.sqrt(280.0), w * c])


def degeneracy_margins(cls: H4Class, params: Mapping[str, float], low: LowParts | None = None) -> dict[str, float]:
    """Relative distance of the parameters to each higher-symmetry locus.

    Zero means the parameters sit on the locus named by the key.
    """
    low = low or LowParts()
    p = {k: float(v) for k, v in params.items()}
    if cls in (H4Class.CUBIC, H4Class.TRANSVERSE):
        C = harmonic_recompose(HarmonicDecomposition(low.lam, low.mu, Deviator(low.a), Deviator(low.b), _harmonic_part(cls, p)))
        return {"isotropic": _harmonic_part(cls, p).norm() / max(C.norm(), 1e-300)}
    if cls in (H4Class.TRIGONAL, H4Class.TETRAGONAL):
        x, cubic = _dihedral_coords(cls, p["delta"], p["sigma"])
        if np.linalg.norm(x) == 0:
            return {"isotropic": 0.0}
        return {"transversely-isotropic": _rel_line_distance(x, [1.0, 0.0]), "cubic": _rel_line_distance(x, cubic)}
    if cls is H4Class.ORTHOTROPIC:
        lam = np.array([p["lambda1"], p["lambda2"], p["lambda3"]])
        n = np.linalg.norm(lam)
        if n == 0:
            return {"isotropic": 0.0}
        gap = min(abs(lam[i] - lam[j]) for i, j in ((0, 1), (1, 2), (0, 2))) / (np.sqrt(2.0) * n)
        return {"tetragonal": gap}
    if cls is H4Class.MONOCLINIC:
        return {"orthotropic": _pair_commutator(low.a, low.b)}
    if cls is H4Class.TRICLINIC:
        return {"monoclinic": _no_common_axis(low.a, low.b)}
    return {}


def _pair_commutator(a: NDArray, b: NDArray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(np.linalg.norm(a @ b - b @ a) / (na * nb))


def _no_common_axis(a: NDArray, b: NDArray) -> float:
    """Smallest ``|b e x e| / |b|`` over the eigenvectors ``e`` of ``a``, scaled by the eigen-gap of ``a``."""
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    w, v = np.linalg.eigh(a)
    gap = min(w[1] - w[0], w[2] - w[1]) / na
    worst = min(np.linalg.norm(np.cross(b @ e, e)) / nb for e in v.T)
    return float(min(gap, worst))


def _name_degenerate(cls: H4Class, params: Mapping[str, float], low: LowParts, key: str) -> H4Class:
    """The class actually produced when a margin vanishes."""
    p = {k: float(v) for k, v in params.items()}
    if cls is H4Class.ORTHOTROPIC:
        lam = np.array([p["lambda1"], p["lambda2"], p["lambda3"]])
        if np.allclose(lam, 0.0):
            return H4Class.ISOTROPIC
        if np.ptp(lam) <= 1e-12 * np.linalg.norm(lam):
            return H4Class.CUBIC
        for k in range(3):
            if _rel_line_distance(lam, np.roll([-4.0, -4.0, 1.0], k)) <= 1e-12:
                return H4Class.TRANSVERSE
        return H4Class.TETRAGONAL
    if cls in (H4Class.TRIGONAL, H4Class.TETRAGONAL):
        x, _ = _dihedral_coords(cls, p["delta"], p["sigma"])
        if np.linalg.norm(x) == 0:
            return H4Class.ISOTROPIC
        return H4Class.from_label(key)
    return H4Class.from_label(key)


def check_params(
    cls: H4Class, params: Mapping[str, float], low: LowParts | None = None, margin: float = 0.0, exact_tol: float = 1e-12
) -> None:
    """Reject parameters closer than ``margin`` to a higher-symmetry locus.

    For monoclinic and triclinic samples the guard is on the low-order
    deviators, which certify the class but whose degeneracy does not by
    itself raise the symmetry; no resulting class is named then.

    Raises
    ------
    DegenerateParametersError
        Naming the class the parameters actually produce when known.
    """
    low = low or LowParts()
    for key, m in degeneracy_margins(cls, params, low).items():
        if m > max(margin, exact_tol):
            continue
        if cls in _H4_FROM_PROFILE:
            raise DegenerateParametersError(
                f"low-order parts do not certify {cls.label}: distance {m:.3g} to the {key} locus", None
            )
        if m <= exact_tol:
            actual = _name_degenerate(cls, params, low, key)
            raise DegenerateParametersError(f"degenerate parameters for {cls.label}: the tensor is {actual.label}", actual)
        raise DegenerateParametersError(
            f"parameters for {cls.label} are within margin {margin} of the {key} locus ({m:.3g})", H4Class.from_label(key)
        )


def generate_sample(
    cls: H4Class | str,
    params: Mapping[str, float] | None = None,
    g: Rotation | ArrayLike | None = None,
    lowparts: LowParts | None = None,
    margin: float = 0.0,
) -> ElasticityTensor:
    """Elasticity tensor of a given class, built on its normal form and rotated by ``g``.

    Parameters
    ----------
    cls
        Target class (enum member or label).
    params
        Slice parameters: ``delta`` (cubic, transverse), ``delta, sigma``
        (trigonal, tetragonal), ``lambda1..3`` (orthotropic) or ``h1..h9``
        (monoclinic, triclinic; for monoclinic only ``h1, h3, h7, h8, h9``
        may be nonzero).
    g
        Rotation applied to the whole tensor; identity by default.
    lowparts
        Isotropic scalars and deviators in the normal-form frame.
    margin
        Minimal relative distance to any higher-symmetry locus.

    Raises
    ------
    DegenerateParametersError
        If the parameters produce another class.
    """
    cls = H4Class.from_label(cls) if isinstance(cls, str) else cls
    params = dict(params or {})
    low = lowparts or LowParts()
    if cls is H4Class.ISOTROPIC:
        if np.linalg.norm(low.a) > 0 or np.linalg.norm(low.b) > 0 or params:
            raise InvalidInputError("an isotropic sample takes only lambda and mu")
    if cls is H4Class.MONOCLINIC:
        bad = [f"h{k + 1}" for k in range(9) if k not in _Z2_H and params.get(f"h{k + 1}", 0.0) != 0.0]
        if bad:
            raise InvalidInputError(f"monoclinic profile requires {', '.join(bad)} = 0")
        for name in ("a", "b"):
            m = getattr(low, name)
            if np.linalg.norm(m[:2, 2]) > 1e-14 * max(np.linalg.norm(m), 1e-300):
                raise InvalidInputError(f"monoclinic deviator {name} must have e3 as an eigenvector")
    check_params(cls, params, low, margin)
    D = _harmonic_part(cls, params)
    C = harmonic_recompose(HarmonicDecomposition(low.lam, low.mu, Deviator(low.a), Deviator(low.b), D))
    return C if g is None else rotate(C, as_rotation(g))


def _axial(alpha: float) -> NDArray:
    return alpha * np.diag([1.0, 1.0, -2.0])


def _rand_dev(rng: np.random.Generator) -> NDArray:
    m = rng.standard_normal((3, 3))
    m = 0.5 * (m + m.T)
    return m - np.trace(m) / 3.0 * np.eye(3)


def sample_lowparts(cls: H4Class, rng: np.random.Generator, size: float = 1.0) -> LowParts:
    """Random low-order parts compatible with ``cls`` in its normal-form frame.

    ``size`` sets the magnitude of the deviators, comparable to that of ``D``.
    """
    lam, mu = rng.uniform(0.5, 2.0, 2) * size
    if cls in (H4Class.ISOTROPIC, H4Class.CUBIC):
        return LowParts(lam, mu)
    if cls in (H4Class.TRANSVERSE, H4Class.TRIGONAL, H4Class.TETRAGONAL):
        s = rng.choice([-1.0, 1.0], 2) * rng.uniform(0.1, 0.4, 2) * size
        return LowParts(lam, mu, _axial(s[0]), _axial(s[1]))
    if cls is H4Class.ORTHOTROPIC:
        x, y = (rng.uniform(-1.0, 1.0, 3) * 0.4 * size for _ in range(2))
        return LowParts(lam, mu, np.diag(x - x.mean()), np.diag(y - y.mean()))
    if cls is H4Class.MONOCLINIC:
        out = []
        for _ in range(2):
            m = _rand_dev(rng) * 0.3 * size
            m[:2, 2] = m[2, :2] = 0.0
            out.append(m)
        return LowParts(lam, mu, *out)
    return LowParts(lam, mu, _rand_dev(rng) * 0.3 * size, _rand_dev(rng) * 0.3 * size)


def sample_params(cls: H4Class, rng: np.random.Generator, size: float = 1.0) -> dict[str, float]:
    """Random slice parameters with ``|D|`` of order ``size``.

    Angles on the dihedral slices are drawn uniformly in isometric
    coordinates, so that the distance to the higher loci is the sine of an
    angle in the tensor norm.
    """
    if cls is H4Class.ISOTROPIC:
        return {}
    r = rng.uniform(0.5, 1.5) * size
    if cls in (H4Class.CUBIC, H4Class.TRANSVERSE):
        k = np.sqrt(480.0) if cls is H4Class.CUBIC else np.sqrt(280.0)
        return {"delta": float(rng.choice([-1.0, 1.0]) * r / k)}
    if cls in (H4Class.TRIGONAL, H4Class.TETRAGONAL):
        t = rng.uniform(0.0, 2.0 * np.pi)
        w = 4.0 if cls is H4Class.TRIGONAL else np.sqrt(8.0)
        return {"delta": float(r * np.cos(t) / np.sqrt(280.0)), "sigma": float(r * np.sin(t) / w)}
    if cls is H4Class.ORTHOTROPIC:
        lam = rng.standard_normal(3)
        return {f"lambda{k + 1}": float(v) for k, v in enumerate(r * lam / np.linalg.norm(lam) / 2.0)}
    h = rng.standard_normal(9) * r / 6.0
    if cls is H4Class.MONOCLINIC:
        return {f"h{k + 1}": float(h[k]) for k in _Z2_H}
    return {f"h{k + 1}": float(v) for k, v in enumerate(h)}


@dataclass(frozen=True)
class Sample:
    """Generated tensor with its provenance."""

    cls: H4Class
    params: dict[str, float]
    rotation: Rotation
    lowparts: LowParts
    tensor: ElasticityTensor

    def provenance(self) -> dict:
        return {
            "class": self.cls.label,
            "params": dict(self.params),
            "rotation": self.rotation.matrix.tolist(),
            "lowparts": self.lowparts.as_dict(),
        }


def random_sample(
    cls: H4Class | str, rng: np.random.Generator, margin: float = DEFAULT_MARGIN, rotated: bool = True, max_tries: int = 1000
) -> Sample:
    """Draw parameters and low-order parts until every degeneracy margin exceeds ``margin``."""
    cls = H4Class.from_label(cls) if isinstance(cls, str) else cls
    for _ in range(max_tries):
        params = sample_params(cls, rng)
        low = sample_lowparts(cls, rng)
        try:
            check_params(cls, params, low, margin)
        except DegenerateParametersError:
            continue
        g = Rotation.random(rng) if rotated else Rotation.identity()
        return Sample(cls, params, g, low, generate_sample(cls, params, g, low))
    raise RuntimeError(f"could not draw a {cls.label} sample with margin {margin}")


def add_noise(C: ElasticityTensor, eps: float, rng: np.random.Generator) -> ElasticityTensor:
    """Add a symmetric Gaussian perturbation of Kelvin norm ``eps |C|``."""
    e = rng.standard_normal((6, 6))
    e = 0.5 * (e + e.T)
    e *= eps * C.norm() / np.linalg.norm(e)
    return ElasticityTensor.from_kelvin(C.kelvin + e)
