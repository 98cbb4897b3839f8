"""Isotropy classes of tuples of quadratic forms, Hermite root counting and symmetry-plane tests.

The class lattice of an n-tuple of symmetric 3x3 matrices is the chain
``TRIV < Z2 < D2 < O2 < SO3``.  Every test below is a polynomial identity in
the data, checked as ``|q| <= tol * scale(q)`` with ``scale(q)`` the product
of the norms of the operands entering ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .tencore import (
    ElasticityTensor,
    HarmonicDecomposition,
    InvalidInputError,
    dilatation_voigt,
    _check_symmetric,
    harmonic_decompose,
    rotate4,
)

DEFAULT_TOL = 1e-8
HERMITE_TOL = 1e-10


class TupleKind(IntEnum):
    """Isotropy classes of a tuple of quadratic forms, ordered by inclusion."""

    TRIV = 0
    Z2 = 1
    D2 = 2
    O2 = 3
    SO3 = 4


@dataclass(frozen=True)
class QuadTuple:
    """An ordered tuple of symmetric 3x3 matrices."""

    forms: tuple[NDArray, ...]

    def __post_init__(self):
        out = []
        for f in self.forms:
            m = np.array(f, dtype=float)
            if m.shape != (3, 3):
                raise InvalidInputError(f"quadratic form must be 3x3, got {m.shape}")
            _check_symmetric(m)
            m = 0.5 * (m + m.T)
            m.setflags(write=False)
            out.append(m)
        object.__setattr__(self, "forms", tuple(out))

    def __len__(self) -> int:
        return len(self.forms)

    def rotated(self, g: ArrayLike) -> "QuadTuple":
        g = np.asarray(g, dtype=float)
        return QuadTuple(tuple(g @ f @ g.T for f in self.forms))


@dataclass(frozen=True)
class TupleClass:
    """Verdict of :func:`classify_tuple`.

    ``axis`` is a unit common eigenvector: the symmetry axis for ``Z2`` and
    the distinguished axis for ``O2``.  ``frame`` holds a common eigenbasis
    (columns) for ``D2`` and above.
    """

    kind: TupleKind
    axis: NDArray | None = None
    frame: NDArray | None = None
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.kind.name


def skew(w: ArrayLike) -> NDArray:
    """``j(w)``, the skew matrix with ``j(w) x = w x x``."""
    w1, w2, w3 = np.asarray(w, dtype=float)
    return np.array([[0.0, -w3, w2], [w3, 0.0, -w1], [-w2, w1, 0.0]])


def commutator_vector(a: ArrayLike, b: ArrayLike) -> NDArray:
    """``j^-1(ab - ba)`` for symmetric ``a, b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = a @ b - b @ a
    return np.array([c[2, 1], c[0, 2], c[1, 0]])


def deviatoric(a: ArrayLike) -> NDArray:
    a = np.asarray(a, dtype=float)
    return a - np.trace(a) / 3.0 * np.eye(3)


# ---------------------------------------------------------------- Hermite


class HermiteCount(NamedTuple):
    """Outcome of :func:`hermite_distinct_roots`.

    ``count`` is the number of distinct roots and ``real`` is False when the
    discriminant is negative (one real root and a complex pair).  ``rank``
    and ``signature`` are those of the Hankel matrix.
    """

    count: int
    real: bool
    delta2: float
    delta3: float
    rank: int
    signature: int


def hankel_matrix(s1: float, s2: float, s3: float) -> NDArray:
    """Hankel matrix of the power sums of the roots of ``x^3 - s1 x^2 + s2 x - s3``."""
    return np.array(
        [
            [3.0, 2.0 * s1, s2],
            [2.0 * s1, 2.0 * s1**2 - 2.0 * s2, s1 * s2 - 3.0 * s3],
            [s2, s1 * s2 - 3.0 * s3, -2.0 * s1 * s3 + s2**2],
        ]
    )


def hermite_minors(s1: float, s2: float, s3: float) -> tuple[float, float, float]:
    d2 = 2.0 * s1**2 - 6.0 * s2
    d3 = -27.0 * s3**2 + (18.0 * s1 * s2 - 4.0 * s1**3) * s3 - 4.0 * s2**3 + s1**2 * s2**2
    return 3.0, d2, d3


def _root_scale(s1: float, s2: float, s3: float) -> float:
    return max(abs(s1), np.sqrt(abs(s2)), np.cbrt(abs(s3)))


def hermite_distinct_roots(s1: float, s2: float, s3: float, tol: float = HERMITE_TOL) -> HermiteCount:
    """Count the distinct roots of ``x^3 - s1 x^2 + s2 x - s3`` from the Hankel minors.

    A minor of degree ``k`` in the roots is treated as zero when its absolute
    value is at most ``tol * s^k``, where ``s`` bounds the size of the roots.
    """
    _, d2, d3 = hermite_minors(s1, s2, s3)
    s = _root_scale(s1, s2, s3)
    z2 = abs(d2) <= tol * s**2
    z3 = abs(d3) <= tol * s**6
    if not z3:
        count, real = (3, True) if d3 > 0 else (3, False)
    elif not z2:
        count, real = 2, True
    else:
        count, real = 1, True
    ev = np.linalg.eigvalsh(hankel_matrix(s1, s2, s3))
    band = tol * max(1.0, s**4) * 3.0
    rank = int(np.sum(np.abs(ev) > band))
    signature = int(np.sum(ev > band) - np.sum(ev < -band))
    return HermiteCount(count, real, d2, d3, rank, signature)


def elementary_symmetric(a: ArrayLike) -> tuple[float, float, float]:
    """``(s1, s2, s3)`` of the eigenvalues of a 3x3 matrix."""
    a = np.asarray(a, dtype=float)
    s1 = np.trace(a)
    s2 = 0.5 * (s1**2 - np.trace(a @ a))
    return float(s1), float(s2), float(np.linalg.det(a))


# ---------------------------------------------------------------- tuple classes


def _double_eigenvalue_residual(a: NDArray, m: float | None = None) -> float:
    """``|(tr a^2)^3 - 6 (tr a^3)^2| / (|a|^5 m)`` for a deviator ``a``, ``m = |a|`` by default.

    This is twice the discriminant of ``a`` and vanishes exactly when two
    eigenvalues coincide.
    """
    t2 = np.trace(a @ a)
    t3 = np.trace(a @ a @ a)
    na = np.sqrt(t2)
    return abs(t2**3 - 6.0 * t3**2) / (na**5 * (na if m is None else m))


def _cauchy_schwarz_residual(a: NDArray, b: NDArray, ma: float | None = None, mb: float | None = None) -> float:
    ab = np.tensordot(a, b)
    aa = np.tensordot(a, a)
    bb = np.tensordot(b, b)
    na, nb = np.sqrt(aa), np.sqrt(bb)
    return abs(ab**2 - aa * bb) / (na * nb * (na if ma is None else ma) * (nb if mb is None else mb))


def _common_frame(devs: Sequence[NDArray]) -> NDArray:
    # a generic combination of commuting matrices shares their eigenbasis
    weights = np.sqrt([2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0])
    m = sum(np.cbrt(weights[k % 8]) ** (k + 1) * d / max(np.linalg.norm(d), 1e-300) for k, d in enumerate(devs))
    return np.linalg.eigh(m)[1]


def _simple_axis(a: NDArray) -> NDArray:
    """Eigenvector of the eigenvalue of ``a`` farthest from the other two."""
    w, v = np.linalg.eigh(a)
    k = 0 if (w[1] - w[0]) > (w[2] - w[1]) else 2
    return v[:, k]


def _axis_residual(devs: Sequence[NDArray], n: NDArray, refs: Sequence[float] | None = None) -> float:
    """Largest ``|a n x n| / m_a`` over the forms (``m_a = |a|`` by default): zero iff ``n`` is a common eigenvector."""
    if refs is None:
        refs = [np.linalg.norm(d) for d in devs]
    return max(np.linalg.norm(np.cross(d @ n, n)) / m for d, m in zip(devs, refs))


def _orient(n: NDArray) -> NDArray:
    n = n / np.linalg.norm(n)
    k = int(np.argmax(np.abs(n)))
    return n if n[k] > 0 else -n


def find_common_axis(
    devs: Sequence[NDArray], tol: float = DEFAULT_TOL, refs: Sequence[float] | None = None
) -> tuple[NDArray | None, float]:
    """Search a unit common eigenvector of nonzero symmetric matrices.

    Candidates are the commutator vectors of all pairs, strongest first; if
    none of them works, the eigenvectors of each matrix are tried.  Returns
    the best candidate (or None) and its residual.  ``refs`` are the
    normalizing magnitudes of the forms (their norms by default).
    """
    if refs is None:
        refs = [np.linalg.norm(d) for d in devs]
    best: NDArray | None = None
    best_res = np.inf
    cands: list[tuple[float, NDArray]] = []
    for k in range(len(devs)):
        for l in range(k + 1, len(devs)):
            w = commutator_vector(devs[k], devs[l])
            r = np.linalg.norm(w) / (refs[k] * refs[l])
            if r > tol:
                cands.append((r, w))
    cands.sort(key=lambda t: -t[0])
    pool = [w for _, w in cands]
    pool += [v for d in devs for v in np.linalg.eigh(d)[1].T]
    for n in pool:
        n = _orient(n)
        r = _axis_residual(devs, n, refs)
        if r < best_res:
            best, best_res = n, r
        if r <= tol:
            break
    return best, best_res


def classify_tuple(
    t: QuadTuple | Sequence[ArrayLike], tol: float = DEFAULT_TOL, scales: Sequence[float] | None = None
) -> TupleClass:
    """Isotropy class of a tuple of symmetric matrices.

    Parameters
    ----------
    t
        The forms.
    tol
        Relative tolerance of every zero test.
    scales
        Reference magnitude of each form.  A form is isotropic when
        ``|dev a_k| <= tol * scale_k``, and every residual involving
        ``a_k`` is normalized by ``max(|dev a_k|, scale_k)`` in place of
        ``|dev a_k|``, so that a perturbation of size ``eps * scale_k``
        moves it by about ``eps``.  Defaults to ``|a_k|``.

    Returns
    -------
    TupleClass
        The first condition that holds, tested from ``SO3`` down to ``Z2``.
    """
    if not isinstance(t, QuadTuple):
        t = QuadTuple(tuple(t))
    if scales is None:
        scales = [np.linalg.norm(f) for f in t.forms]
    devs = [deviatoric(f) for f in t.forms]
    res: dict[str, float] = {}
    keep = [k for k, (d, s) in enumerate(zip(devs, scales)) if np.linalg.norm(d) > tol * s]
    active = [devs[k] for k in keep]
    refs = [max(np.linalg.norm(devs[k]), scales[k]) for k in keep]
    if not active:
        return TupleClass(TupleKind.SO3, frame=np.eye(3), residuals=res)

    double = max(_double_eigenvalue_residual(d, m) for d, m in zip(active, refs))
    cs = max(
        (
            _cauchy_schwarz_residual(active[i], active[j], refs[i], refs[j])
            for i in range(len(active))
            for j in range(i + 1, len(active))
        ),
        default=0.0,
    )
    res["double_eigenvalue"] = double
    res["cauchy_schwarz"] = cs
    if double <= tol and cs <= tol:
        axis = _orient(_simple_axis(active[0]))
        return TupleClass(TupleKind.O2, axis=axis, frame=_common_frame(active), residuals=res)

    comm = max(
        (
            np.linalg.norm(commutator_vector(active[i], active[j])) / (refs[i] * refs[j])
            for i in range(len(active))
            for j in range(i + 1, len(active))
        ),
        default=0.0,
    )
    res["commutator"] = comm
    if comm <= tol:
        return TupleClass(TupleKind.D2, frame=_common_frame(active), residuals=res)

    axis, r = find_common_axis(active, tol, refs)
    res["common_axis"] = r
    if axis is not None and r <= tol:
        return TupleClass(TupleKind.Z2, axis=axis, residuals=res)
    return TupleClass(TupleKind.TRIV, residuals=res)


# ---------------------------------------------------------------- symmetry planes


def plane_basis(n: NDArray) -> tuple[NDArray, NDArray]:
    """Two orthonormal vectors spanning the plane orthogonal to the unit vector ``n``."""
    k = int(np.argmin(np.abs(n)))
    e = np.zeros(3)
    e[k] = 1.0
    m1 = np.cross(n, e)
    m1 /= np.linalg.norm(m1)
    return m1, np.cross(n, m1)


def _unit(n: ArrayLike) -> NDArray:
    n = np.asarray(n, dtype=float).reshape(3)
    r = np.linalg.norm(n)
    if not np.isfinite(r) or r == 0.0:
        raise InvalidInputError("normal vector must be nonzero")
    return n / r


def _perp(u: NDArray, n: NDArray) -> float:
    """Length of the part of ``u`` orthogonal to the unit vector ``n``."""
    return float(np.linalg.norm(u - (u @ n) * n))


def _in_plane_vectors(n: NDArray) -> list[NDArray]:
    # the condition is quadratic in m, so m1, m2 and their bisector are needed
    m1, m2 = plane_basis(n)
    return [m1, m2, (m1 + m2) / np.sqrt(2.0)]


def cowin_mehrabadi_residuals(C: ElasticityTensor, n: ArrayLike) -> NDArray:
    """The four symmetry-plane residuals of ``C`` at normal ``n``, relative to ``|C|``."""
    n = _unit(n)
    t = C.full
    d, v = dilatation_voigt(C)
    c3 = np.einsum("ijks,j,k,s->i", t, n, n, n)
    c4 = max(_perp(np.einsum("ijks,j,s,k->i", t, m, m, n), n) for m in _in_plane_vectors(n))
    scale = max(C.norm(), 1e-300)
    return np.array([_perp(d @ n, n), _perp(v @ n, n), _perp(c3, n), c4]) / scale


def cowin_mehrabadi(C: ElasticityTensor, n: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """True when the plane orthogonal to ``n`` is a symmetry plane of ``C``."""
    return bool(np.all(cowin_mehrabadi_residuals(C, n) <= tol))


def cowin_mehrabadi_harmonic_residuals(parts: HarmonicDecomposition, n: ArrayLike, scale: float | None = None) -> NDArray:
    """Symmetry-plane residuals in terms of the harmonic components.

    ``n`` must be a common eigenvector of ``a`` and ``b``, and of the vectors
    ``(D : n n) n`` and ``(D : m m) n`` for every ``m`` orthogonal to ``n``.
    """
    n = _unit(n)
    t = parts.D.full
    a, b = parts.a.matrix, parts.b.matrix
    c3 = np.einsum("ijkl,j,k,l->i", t, n, n, n)
    c4 = max(_perp(np.einsum("ijkl,j,k,l->i", t, n, m, m), n) for m in _in_plane_vectors(n))
    if scale is None:
        scale = max(np.linalg.norm(a), np.linalg.norm(b), parts.D.norm(), 1e-300)
    return np.array([_perp(a @ n, n), _perp(b @ n, n), _perp(c3, n), c4]) / scale


def cowin_mehrabadi_harmonic(C: ElasticityTensor, n: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    parts = harmonic_decompose(C)
    return bool(np.all(cowin_mehrabadi_harmonic_residuals(parts, n, scale=C.norm()) <= tol))


def reflection_residual(C: ElasticityTensor, n: ArrayLike) -> float:
    """``|r C - C| / |C|`` for the reflection ``r`` through the plane orthogonal to ``n``."""
    n = _unit(n)
    r = np.eye(3) - 2.0 * np.outer(n, n)
    t = C.full
    return float(np.linalg.norm(rotate4(t, r) - t) / max(np.linalg.norm(t), 1e-300))
