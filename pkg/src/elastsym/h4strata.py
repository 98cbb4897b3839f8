"""Membership tests for the finite-monodromy strata of H^4.

Each test evaluates a family of polynomial relations on the normalized
invariants ``jk = Jk / J2^(k/2)`` and reports how far the point is from the
variety they cut out.  Distances are taken in the coordinates

    u_k = j_k / s_k,    k = 3..10,

where ``s_k`` is the size of ``j_k`` on the unit cubic and transversely
isotropic normal forms, so that every coordinate is of order one.  The family
residual is the length of the Gauss-Newton step onto the variety and the
per-relation residual is ``|P| / |grad_u P|``.  Both are first-order
estimates of a distance and are therefore comparable across relations of
different degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from . import relations as R
from ._poly import Poly, PolyBatch
from .invariants import DEGREES, DEFAULT_TOL_ZERO, InvariantVector, boehler_invariants
from .tencore import Harmonic4

DEFAULT_TOL = 1e-8
_NAMES = [f"J{k}" for k in DEGREES]
_SQ2 = np.sqrt(2.0)


class NoNormalFormError(ValueError):
    """The stratum result carries no slice parameters to build a normal form from."""


class H4Class(Enum):
    """The eight isotropy classes, with their display name and group."""

    TRICLINIC = ("triclinic", "1")
    MONOCLINIC = ("monoclinic", "Z2")
    ORTHOTROPIC = ("orthotropic", "D2")
    TRIGONAL = ("trigonal", "D3")
    TETRAGONAL = ("tetragonal", "D4")
    TRANSVERSE = ("transversely-isotropic", "O(2)")
    CUBIC = ("cubic", "O")
    ISOTROPIC = ("isotropic", "SO(3)")

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def group(self) -> str:
        return self.value[1]

    @classmethod
    def from_label(cls, text: str) -> "H4Class":
        key = text.strip().lower().replace("_", "-")
        for c in cls:
            if key in (c.label, c.name.lower(), c.group.lower()):
                return c
        if key in ("transverse", "transversely isotropic"):
            return cls.TRANSVERSE
        raise ValueError(f"unknown symmetry class {text!r}")

    def leq(self, other: "H4Class") -> bool:
        """``[self] <= [other]``: ``self`` is conjugate to a subgroup of ``other``."""
        return other in _UP_CLOSURE[self]


_COVERS = {
    H4Class.TRICLINIC: {H4Class.MONOCLINIC},
    H4Class.MONOCLINIC: {H4Class.ORTHOTROPIC, H4Class.TRIGONAL},
    H4Class.ORTHOTROPIC: {H4Class.TETRAGONAL},
    H4Class.TRIGONAL: {H4Class.TRANSVERSE, H4Class.CUBIC},
    H4Class.TETRAGONAL: {H4Class.TRANSVERSE, H4Class.CUBIC},
    H4Class.TRANSVERSE: {H4Class.ISOTROPIC},
    H4Class.CUBIC: {H4Class.ISOTROPIC},
    H4Class.ISOTROPIC: set(),
}


def _up(c: H4Class) -> set[H4Class]:
    out = {c}
    for d in _COVERS[c]:
        out |= _up(d)
    return out


_UP_CLOSURE = {c: _up(c) for c in H4Class}


def _normalized_slice(param: dict[int, str]) -> NDArray:
    v = {"d": 1.0}
    vals = np.array([Poly.parse(param[k]).evaluate(v) for k in DEGREES])
    return vals / vals[0] ** (np.array(DEGREES) / 2.0)


# coordinate scales s_k (s_2 = 1)
COORD_SCALES = np.maximum(
    np.abs(_normalized_slice(R.CUBIC_PARAMETRIC)), np.abs(_normalized_slice(R.TRANSVERSE_PARAMETRIC))
)


class _Family:
    """A list of relations with their gradients in the scaled coordinates."""

    def __init__(self, name: str, polys: list[Poly]):
        self.name = name
        self.polys = polys
        self._values = PolyBatch(polys, _NAMES)
        self._grads = PolyBatch([p.derivative(n) for p in polys for n in _NAMES[1:]], _NAMES)

    def evaluate(self, v: dict[str, float]) -> tuple[float, list[float]]:
        x = [v[n] for n in _NAMES]
        F = self._values.evaluate(x)
        G = self._grads.evaluate(x).reshape(len(self.polys), len(_NAMES) - 1) * COORD_SCALES[1:]
        per = [abs(f) / max(np.linalg.norm(g), 1e-300) for f, g in zip(F, G)]
        step = np.linalg.lstsq(G, F, rcond=1e-10)[0]
        return float(np.linalg.norm(step)), per


_FAMILIES = {
    H4Class.CUBIC: _Family("cubic", R.CUBIC),
    H4Class.TRANSVERSE: _Family("transverse", R.TRANSVERSE),
    H4Class.TRIGONAL: _Family("trigonal", R.TRIGONAL),
    H4Class.TETRAGONAL: _Family("tetragonal", R.TETRAGONAL),
    H4Class.ORTHOTROPIC: _Family("orthotropic", R.ORTHOTROPIC),
}

_SIGMA_REALITY = Poly.parse(R.SIGMA_REALITY)
_ORTHO_DISC = Poly.parse(R.ORTHO_DISCRIMINANT)
_ORTHO_N2 = Poly.parse(R.ORTHO_N2)
_ORTHO_S1 = Poly.parse(R.ORTHO_SIGMA1_NUM)
_NOT_CUBIC = Poly.parse(R.NOT_CUBIC_POINT)
_NOT_TRANSVERSE_D3 = Poly.parse(R.NOT_TRANSVERSE_D3)
_NOT_TRANSVERSE_D4 = Poly.parse(R.NOT_TRANSVERSE_D4)

_RELATION_LABELS = {
    H4Class.CUBIC: R.CUBIC_SYZYGIES,
    H4Class.TRANSVERSE: R.TRANSVERSE_SYZYGIES,
    H4Class.TRIGONAL: R.TRIGONAL_SYZYGIES,
    H4Class.TETRAGONAL: R.TETRAGONAL_SYZYGIES,
    H4Class.ORTHOTROPIC: [f"orthotropic ({c})" for c in "abcdef"],
}


@dataclass(frozen=True)
class StratumResult:
    """Outcome of one stratum test.

    ``member`` means the closed stratum (isotropy at least ``cls``);
    ``strict`` additionally requires every genericity flag, i.e. the open
    stratum.  ``residual`` is the family residual compared against the
    tolerance and ``syzygy_residuals`` lists the per-relation values.
    Slice parameters are in the units of ``D``.
    """

    cls: H4Class
    member: bool
    strict: bool
    residual: float
    syzygy_residuals: dict[str, float] = field(default_factory=dict)
    inequality_margins: dict[str, float] = field(default_factory=dict)
    slice_params: dict[str, float] = field(default_factory=dict)
    genericity_flags: dict[str, bool] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def summary(self) -> dict:
        return {
            "class": self.cls.label,
            "member": self.member,
            "strict": self.strict,
            "residual": self.residual,
            "syzygy_residuals": dict(self.syzygy_residuals),
            "inequality_margins": dict(self.inequality_margins),
            "slice_params": dict(self.slice_params),
            "genericity_flags": dict(self.genericity_flags),
            "notes": list(self.notes),
        }


def _normalized(J: InvariantVector) -> dict[str, float]:
    j2 = J[2]
    return {n: J[k] / j2 ** (k / 2.0) for n, k in zip(_NAMES, DEGREES)}


def _raw(J: InvariantVector) -> dict[str, float]:
    return {n: J[k] for n, k in zip(_NAMES, DEGREES)}


def _zero_result(cls: H4Class, J: InvariantVector) -> StratumResult:
    return StratumResult(cls, False, False, np.inf, notes=("D is numerically zero; normalized invariants undefined",))


def _family_part(cls: H4Class, v: dict[str, float]) -> tuple[float, dict[str, float]]:
    res, per = _FAMILIES[cls].evaluate(v)
    return res, dict(zip(_RELATION_LABELS[cls], per))


def test_isotropic(J: InvariantVector, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    """``D = 0``, decided by ``J2 <= (tol_zero * scale)^2``."""
    r = float(np.sqrt(max(J[2], 0.0)) / J.scale)
    member = J.is_zero(tol_zero)
    return StratumResult(H4Class.ISOTROPIC, member, member, r, {"J2": r})


def test_cubic(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    if J.is_zero(tol_zero):
        return _zero_result(H4Class.CUBIC, J)
    res, per = _family_part(H4Class.CUBIC, _normalized(J))
    member = res <= tol
    params = {"delta": J[3] / (4.0 * J[2])} if member else {}
    return StratumResult(H4Class.CUBIC, member, member, res, per, {}, params, {"J2 != 0": True})


def test_transverse(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    if J.is_zero(tol_zero):
        return _zero_result(H4Class.TRANSVERSE, J)
    res, per = _family_part(H4Class.TRANSVERSE, _normalized(J))
    member = res <= tol
    params = {"delta": 7.0 * J[3] / (18.0 * J[2])} if member else {}
    return StratumResult(H4Class.TRANSVERSE, member, member, res, per, {}, params, {"J2 != 0": True})


def _dihedral(
    cls: H4Class, J: InvariantVector, tol: float, tol_zero: float, sigma_weight: float, not_transverse: Poly, flag: str
) -> StratumResult:
    if J.is_zero(tol_zero):
        return _zero_result(cls, J)
    v = _normalized(J)
    res, per = _family_part(cls, v)
    margin = _SIGMA_REALITY.evaluate(v)
    flags = {
        "3 J4 - J2^2 != 0": abs(_NOT_CUBIC.evaluate(v)) > tol,
        flag: abs(not_transverse.evaluate(v)) > tol,
    }
    notes: list[str] = []
    params: dict[str, float] = {}
    member = res <= tol and margin >= -tol
    if res <= tol and margin < -tol:
        notes.append("relations hold but sigma is not real")
    if member:
        den = J[2] ** 2 - 3.0 * J[4]
        if abs(_NOT_CUBIC.evaluate(v)) > tol:
            delta = -J[5] / (4.0 * den)
            s2 = (J[2] - 280.0 * delta**2) / sigma_weight
            params = {"delta": delta, "sigma": float(np.sqrt(max(s2, 0.0)))}
        else:
            notes.append("at the cubic point: delta is not a rational function of the invariants here")
    strict = member and all(flags.values())
    if member and not strict:
        notes.append("in the closed stratum, not in the open stratum")
    return StratumResult(cls, member, strict, res, per, {"sigma reality": margin}, params, flags, tuple(notes))


def test_trigonal(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    return _dihedral(H4Class.TRIGONAL, J, tol, tol_zero, 16.0, _NOT_TRANSVERSE_D3, "98 J4 - 41 J2^2 != 0")


def test_tetragonal(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    return _dihedral(H4Class.TETRAGONAL, J, tol, tol_zero, 8.0, _NOT_TRANSVERSE_D4, "5 J2^3 - 8 J2 J4 - 70 J3^2 != 0")


def ortho_sigmas(values: dict[str, float]) -> tuple[float, float, float]:
    """``(s1, s2, s3)`` as rational functions of ``J2 .. J7`` (raw or normalized)."""
    disc = _ORTHO_DISC.evaluate(values)
    j2, j3 = values["J2"], values["J3"]
    s1 = -9.0 * _ORTHO_S1.evaluate(values) / (2.0 * disc)
    s2 = 4.0 / 7.0 * s1**2 - j2 / 14.0
    s3 = j3 / 24.0 + s1**3 / 7.0 - s1 * j2 / 56.0
    return s1, s2, s3


def ortho_roots(s1: float, s2: float, s3: float) -> NDArray:
    """Roots of ``x^3 - s1 x^2 + s2 x - s3`` (companion matrix), sorted descending."""
    r = np.roots([1.0, -s1, s2, -s3])
    return np.sort(r.real)[::-1]


def test_orthotropic(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> StratumResult:
    if J.is_zero(tol_zero):
        return _zero_result(H4Class.ORTHOTROPIC, J)
    v = _normalized(J)
    res, per = _family_part(H4Class.ORTHOTROPIC, v)
    disc = _ORTHO_DISC.evaluate(v)
    margins = {"discriminant": disc, "N2": _ORTHO_N2.evaluate(v)}
    flags = {"discriminant > 0": disc > tol}
    notes: list[str] = []
    params: dict[str, float] = {}
    if abs(disc) > tol:
        sig = ortho_sigmas(v)
        ps = {"s1": sig[0], "s2": sig[1], "s3": sig[2]}
        for k in (8, 9, 10):
            s = abs(v[f"J{k}"] - R.ORTHO_P[k].evaluate(ps)) / COORD_SCALES[k - 2]
            per[f"S{k}"] = s
            res = max(res, s)
    else:
        notes.append("closed-stratum boundary; use higher-symmetry tests")
    member = res <= tol and min(margins.values()) >= -tol
    if member and abs(disc) > tol:
        s1, s2, s3 = ortho_sigmas(_raw(J))
        lam = ortho_roots(s1, s2, s3)
        params = {"s1": s1, "s2": s2, "s3": s3, "lambda1": float(lam[0]), "lambda2": float(lam[1]), "lambda3": float(lam[2])}
    strict = member and all(flags.values())
    if member and not strict:
        notes.append("in the closed stratum, not in the open stratum")
    return StratumResult(H4Class.ORTHOTROPIC, member, strict, res, per, margins, params, flags, tuple(notes))


_TESTS = {
    H4Class.CUBIC: test_cubic,
    H4Class.TRANSVERSE: test_transverse,
    H4Class.TETRAGONAL: test_tetragonal,
    H4Class.TRIGONAL: test_trigonal,
    H4Class.ORTHOTROPIC: test_orthotropic,
}

DECISION_ORDER = (
    H4Class.ISOTROPIC,
    H4Class.CUBIC,
    H4Class.TRANSVERSE,
    H4Class.TETRAGONAL,
    H4Class.TRIGONAL,
    H4Class.ORTHOTROPIC,
)


@dataclass(frozen=True)
class H4Verdict:
    """Highest class whose open-stratum test passed, with every test that ran.

    ``cls`` is None when no finite-monodromy stratum matched: the tensor is
    then monoclinic or triclinic, which the invariants alone do not decide.
    """

    cls: H4Class | None
    results: dict[H4Class, StratumResult]

    @property
    def best(self) -> StratumResult | None:
        return None if self.cls is None else self.results[self.cls]


def classify_h4(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> H4Verdict:
    """Run the stratum tests top-down and stop at the first open-stratum member."""
    results: dict[H4Class, StratumResult] = {}
    iso = test_isotropic(J, tol_zero)
    results[H4Class.ISOTROPIC] = iso
    if iso.member:
        return H4Verdict(H4Class.ISOTROPIC, results)
    for cls in DECISION_ORDER[1:]:
        r = _TESTS[cls](J, tol, tol_zero)
        results[cls] = r
        if r.strict:
            return H4Verdict(cls, results)
    return H4Verdict(None, results)


def test_all(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> dict[H4Class, StratumResult]:
    """Every stratum test, without early exit."""
    out = {H4Class.ISOTROPIC: test_isotropic(J, tol_zero)}
    out.update({c: _TESTS[c](J, tol, tol_zero) for c in DECISION_ORDER[1:]})
    return out


# ---------------------------------------------------------------- bifurcations


def _ray_distance(x: NDArray, direction: NDArray) -> float:
    """Sine of the angle between ``x`` and the line spanned by ``direction``."""
    u = direction / np.linalg.norm(direction)
    n = np.linalg.norm(x)
    return float(np.linalg.norm(x - (x @ u) * u) / n) if n > 0 else 0.0


def bifurcation_path(J: InvariantVector, tol: float = DEFAULT_TOL, tol_zero: float = DEFAULT_TOL_ZERO) -> list[tuple[str, float]]:
    """Distances from the current class to each class directly reachable upward.

    All residuals are scale-free.  From ``D2`` they measure root collisions
    of the eigen-parameters (relative to their norm), from ``D3`` and ``D4``
    the vanishing of ``sigma`` or the cubic relation between ``sigma`` and
    ``delta``, and from ``O(2)`` and ``O`` the size ``sqrt(J2) / scale``.
    Below ``D2`` the family residual of every finite class is reported.
    Transitions are sorted by residual.
    """
    verdict = classify_h4(J, tol, tol_zero)
    c = verdict.cls
    out: list[tuple[str, float]] = []
    if c is H4Class.ISOTROPIC:
        return out
    if c in (H4Class.CUBIC, H4Class.TRANSVERSE):
        out.append((f"{c.group}->SO(3)", float(np.sqrt(J[2]) / J.scale)))
    elif c in (H4Class.TRIGONAL, H4Class.TETRAGONAL):
        p = verdict.best.slice_params
        d, s = p["delta"], p["sigma"]
        if c is H4Class.TRIGONAL:
            x = np.array([np.sqrt(280.0) * d, 4.0 * s])
            cubic_dir = np.array([np.sqrt(280.0), 4.0 * np.sqrt(50.0)])
        else:
            x = np.array([np.sqrt(280.0) * d, np.sqrt(8.0) * s])
            cubic_dir = np.array([np.sqrt(280.0), np.sqrt(8.0) * 5.0])
        out.append((f"{c.group}->O(2)", _ray_distance(x, np.array([1.0, 0.0]))))
        out.append((f"{c.group}->O", _ray_distance(x, cubic_dir)))
    elif c is H4Class.ORTHOTROPIC:
        p = verdict.best.slice_params
        lam = np.array([p["lambda1"], p["lambda2"], p["lambda3"]])
        n = np.linalg.norm(lam)
        gaps = [abs(lam[i] - lam[j]) / n for i, j in ((0, 1), (1, 2), (0, 2))]
        out.append(("D2->D4", min(gaps)))
        out.append(("D2->O", _ray_distance(lam, np.ones(3))))
        out.append(("D2->O(2)", min(_ray_distance(lam, np.roll([-4.0, -4.0, 1.0], k)) for k in range(3))))
    else:
        for cls in (H4Class.ORTHOTROPIC, H4Class.TRIGONAL, H4Class.TETRAGONAL, H4Class.TRANSVERSE, H4Class.CUBIC):
            out.append((f"1->{cls.group}", verdict.results[cls].residual))
    return sorted(out, key=lambda t: t[1])


# ---------------------------------------------------------------- normal forms


def normal_form(cls: H4Class, **p: float) -> Harmonic4:
    """The class representative on its linear slice, built from its Kelvin matrix.

    Parameters are ``delta`` (cubic, transverse), ``delta, sigma`` (trigonal,
    tetragonal) or ``lambda1, lambda2, lambda3`` (orthotropic).
    """
    if cls is H4Class.ISOTROPIC:
        return Harmonic4.zero()
    if cls is H4Class.CUBIC:
        d = p["delta"]
        k = np.diag([8.0, 8.0, 8.0, -8.0, -8.0, -8.0]) * d
        k[:3, :3] -= 4.0 * d * (1.0 - np.eye(3))
        return Harmonic4.from_kelvin(k)
    if cls is H4Class.TRANSVERSE:
        return normal_form(H4Class.TETRAGONAL, delta=p["delta"], sigma=0.0)
    if cls is H4Class.TRIGONAL:
        d, s = p["delta"], p["sigma"]
        r = _SQ2 * s
        k = np.array(
            [
                [3 * d, d, -4 * d, -r, 0, 0],
                [d, 3 * d, -4 * d, r, 0, 0],
                [-4 * d, -4 * d, 8 * d, 0, 0, 0],
                [-r, r, 0, -8 * d, 0, 0],
                [0, 0, 0, 0, -8 * d, -2 * s],
                [0, 0, 0, 0, -2 * s, 2 * d],
            ],
            dtype=float,
        )
        return Harmonic4.from_kelvin(k)
    if cls is H4Class.TETRAGONAL:
        d, s = p["delta"], p["sigma"]
        k = np.zeros((6, 6))
        k[:3, :3] = [[-s + 3 * d, s + d, -4 * d], [s + d, -s + 3 * d, -4 * d], [-4 * d, -4 * d, 8 * d]]
        k[3:, 3:] = np.diag([-8 * d, -8 * d, 2 * s + 2 * d])
        return Harmonic4.from_kelvin(k)
    if cls is H4Class.ORTHOTROPIC:
        l1, l2, l3 = p["lambda1"], p["lambda2"], p["lambda3"]
        k = np.zeros((6, 6))
        k[:3, :3] = [[-l2 - l3, l3, l2], [l3, -l3 - l1, l1], [l2, l1, -l1 - l2]]
        k[3:, 3:] = np.diag([2 * l1, 2 * l2, 2 * l3])
        return Harmonic4.from_kelvin(k)
    raise NoNormalFormError(f"no finite-monodromy normal form for class {cls.label}")


_FORM_KEYS = {
    H4Class.CUBIC: ("delta",),
    H4Class.TRANSVERSE: ("delta",),
    H4Class.TRIGONAL: ("delta", "sigma"),
    H4Class.TETRAGONAL: ("delta", "sigma"),
    H4Class.ORTHOTROPIC: ("lambda1", "lambda2", "lambda3"),
}


def reconstruct_normal_form(r: StratumResult) -> Harmonic4:
    """Normal form of a stratum member from its recovered slice parameters."""
    if r.cls is H4Class.ISOTROPIC and r.member:
        return Harmonic4.zero()
    keys = _FORM_KEYS.get(r.cls)
    if not r.member or keys is None or any(k not in r.slice_params for k in keys):
        raise NoNormalFormError(f"no normal form available for this {r.cls.label} result")
    return normal_form(r.cls, **{k: r.slice_params[k] for k in keys})


def normalized_distance(J1: InvariantVector, J2: InvariantVector) -> float:
    """Largest difference of the scaled coordinates ``u_k`` between two invariant vectors."""
    a, b = _normalized(J1), _normalized(J2)
    return float(max(abs(a[n] - b[n]) / s for n, s in zip(_NAMES, COORD_SCALES)))


def invariants_of_normal_form(cls: H4Class, **p: float) -> InvariantVector:
    return boehler_invariants(normal_form(cls, **p))
