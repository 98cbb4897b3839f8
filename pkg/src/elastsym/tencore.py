"""Elasticity tensors, their 6x6 encodings, the SO(3) action and the harmonic split.

Index pairs follow the usual Voigt order ``11, 22, 33, 23, 13, 12``.  The
Kelvin matrix carries a factor ``sqrt(2)`` on normal/shear entries and ``2`` on
shear/shear entries so that it is a genuine symmetric operator on symmetric
3x3 matrices with the inner product ``tr(ab)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.transform import Rotation as _ScipyRotation

VOIGT_PAIRS: tuple[tuple[int, int], ...] = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
KELVIN_WEIGHTS = np.array([1.0, 1.0, 1.0, np.sqrt(2.0), np.sqrt(2.0), np.sqrt(2.0)])
_KELVIN_OUTER = np.outer(KELVIN_WEIGHTS, KELVIN_WEIGHTS)
_IU = np.triu_indices(6)

# 3x3 index pair -> Voigt index
_VOIGT_OF = np.empty((3, 3), dtype=int)
for _m, (_i, _j) in enumerate(VOIGT_PAIRS):
    _VOIGT_OF[_i, _j] = _VOIGT_OF[_j, _i] = _m

DEVIATOR_TRACE_TOL = 1e-10
SYMMETRY_TOL = 1e-9


class InvalidInputError(ValueError):
    """Raised when a matrix or tensor violates the structure it is meant to have."""


class InvalidRotationError(InvalidInputError):
    """Raised when a matrix is not a proper rotation to tolerance."""


class InvalidPartError(InvalidInputError):
    """Raised when an irreducible part is not traceless or not harmonic."""


def _check_symmetric(m: NDArray, tol: float = SYMMETRY_TOL) -> None:
    scale = max(float(np.max(np.abs(m))), 1.0)
    diff = np.abs(m - m.T)
    if np.max(diff) > tol * scale:
        i, j = np.unravel_index(np.argmax(diff), diff.shape)
        raise InvalidInputError(
            f"matrix is not symmetric: entry ({i + 1},{j + 1}) = {m[i, j]!r} "
            f"but ({j + 1},{i + 1}) = {m[j, i]!r}"
        )


def voigt_to_full(v: NDArray) -> NDArray:
    """Expand a 6x6 Voigt array into the 3x3x3x3 tensor."""
    return v[np.ix_(_VOIGT_OF.ravel(), _VOIGT_OF.ravel())].reshape(3, 3, 3, 3)


def full_to_voigt(t: NDArray) -> NDArray:
    """Read the Voigt entries of a 3x3x3x3 tensor (minor symmetries assumed)."""
    idx = np.array(VOIGT_PAIRS)
    return t[idx[:, 0][:, None], idx[:, 1][:, None], idx[:, 0][None, :], idx[:, 1][None, :]]


def rotate4(t: NDArray, g: NDArray) -> NDArray:
    """Full four-index transformation ``g_ip g_jq g_kr g_ls t_pqrs``."""
    return np.einsum("ip,jq,kr,ls,pqrs->ijkl", g, g, g, g, t, optimize=True)


@dataclass(frozen=True)
class Rotation:
    """A proper orthogonal 3x3 matrix."""

    matrix: NDArray
    tol: float = field(default=1e-10, repr=False, compare=False)

    def __post_init__(self):
        g = np.asarray(self.matrix, dtype=float)
        if g.shape != (3, 3):
            raise InvalidRotationError(f"rotation must be 3x3, got shape {g.shape}")
        ortho = np.linalg.norm(g.T @ g - np.eye(3))
        det = np.linalg.det(g)
        if ortho > self.tol or abs(det - 1.0) > self.tol:
            raise InvalidRotationError(
                f"not a proper rotation: |g^T g - I| = {ortho:.3e}, det = {det:.12g}"
            )
        g.setflags(write=False)
        object.__setattr__(self, "matrix", g)

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(np.eye(3))

    @classmethod
    def random(cls, rng: np.random.Generator | int | None = None) -> "Rotation":
        rng = np.random.default_rng(rng)
        return cls(_ScipyRotation.random(random_state=rng).as_matrix())

    @classmethod
    def about_axis(cls, axis: ArrayLike, angle: float) -> "Rotation":
        axis = np.asarray(axis, dtype=float)
        return cls(_ScipyRotation.from_rotvec(angle * axis / np.linalg.norm(axis)).as_matrix())


def as_rotation(g: Rotation | ArrayLike) -> Rotation:
    return g if isinstance(g, Rotation) else Rotation(np.asarray(g, dtype=float))


@dataclass(frozen=True)
class Deviator:
    """Symmetric traceless 3x3 matrix.

    A trace below ``DEVIATOR_TRACE_TOL * |a|`` is treated as rounding and
    projected out; anything larger is rejected.
    """

    matrix: NDArray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.shape != (3, 3):
            raise InvalidPartError(f"deviator must be 3x3, got shape {a.shape}")
        _check_symmetric(a)
        a = 0.5 * (a + a.T)
        tr = np.trace(a)
        if abs(tr) > DEVIATOR_TRACE_TOL * max(np.linalg.norm(a), 1e-300) and abs(tr) > 0:
            raise InvalidPartError(f"deviator has nonzero trace {tr:.6g}")
        a = a - tr / 3.0 * np.eye(3)
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def zero(cls) -> "Deviator":
        return cls(np.zeros((3, 3)))

    @classmethod
    def dev(cls, m: ArrayLike) -> "Deviator":
        """Deviatoric part of any symmetric matrix."""
        m = np.asarray(m, dtype=float)
        return cls(m - np.trace(m) / 3.0 * np.eye(3))

    def rotated(self, g: Rotation | ArrayLike) -> "Deviator":
        g = as_rotation(g).matrix
        return Deviator(g @ self.matrix @ g.T)

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


def _h_blocks(h: NDArray) -> tuple[NDArray, NDArray, NDArray]:
    h1, h2, h3, h4, h5, h6, h7, h8, h9 = h
    d11 = np.array([[-h9 - h8, h9, h8], [h9, -h9 - h7, h7], [h8, h7, -h8 - h7]])
    d12 = np.array([[-h5 - h6, h2, h1], [h5, -h2 - h4, h3], [h6, h4, -h1 - h3]])
    d22 = np.array([[h7, -h1 - h3, -h2 - h4], [-h1 - h3, h8, -h5 - h6], [-h2 - h4, -h5 - h6, h9]])
    return d11, d12, d22


@dataclass(frozen=True)
class Harmonic4:
    """Totally symmetric traceless fourth-order tensor, stored as ``h1 .. h9``."""

    h: NDArray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float).reshape(9)
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @classmethod
    def zero(cls) -> "Harmonic4":
        return cls(np.zeros(9))

    @property
    def voigt(self) -> NDArray:
        d11, d12, d22 = _h_blocks(self.h)
        return np.block([[d11, d12], [d12.T, d22]])

    @property
    def kelvin(self) -> NDArray:
        return self.voigt * _KELVIN_OUTER

    @property
    def full(self) -> NDArray:
        return voigt_to_full(self.voigt)

    @classmethod
    def from_voigt(cls, v: ArrayLike, tol: float = 1e-10, scale: float = 0.0) -> "Harmonic4":
        """Read ``h`` from a Voigt array, checking harmonicity relative to ``max(|v|, scale)``."""
        v = np.asarray(v, dtype=float)
        h = np.array([v[0, 5], v[0, 4], v[1, 5], v[2, 4], v[1, 3], v[2, 3], v[1, 2], v[0, 2], v[0, 1]])
        out = cls(h)
        err = np.linalg.norm(out.voigt - v)
        if err > tol * max(np.linalg.norm(v), scale, 1e-300) and err > 0:
            raise InvalidPartError(
                f"tensor is not harmonic (totally symmetric and traceless): deviation {err:.3e}"
            )
        return out

    @classmethod
    def from_kelvin(cls, k: ArrayLike, tol: float = 1e-10, scale: float = 0.0) -> "Harmonic4":
        return cls.from_voigt(np.asarray(k, dtype=float) / _KELVIN_OUTER, tol, scale)

    @classmethod
    def from_full(cls, t: ArrayLike, tol: float = 1e-10, scale: float = 0.0) -> "Harmonic4":
        return cls.from_voigt(full_to_voigt(np.asarray(t, dtype=float)), tol, scale)

    def rotated(self, g: Rotation | ArrayLike) -> "Harmonic4":
        g = as_rotation(g).matrix
        return Harmonic4.from_full(rotate4(self.full, g), tol=1e-8)

    def scaled(self, t: float) -> "Harmonic4":
        return Harmonic4(t * self.h)

    def norm(self) -> float:
        """Frobenius norm of the full tensor (equal to the Kelvin matrix norm)."""
        return float(np.linalg.norm(self.kelvin))


@dataclass(frozen=True)
class ElasticityTensor:
    """Stiffness tensor with minor and major symmetries, stored as a symmetric Voigt array."""

    voigt: NDArray

    def __post_init__(self):
        v = np.asarray(self.voigt, dtype=float)
        if v.shape != (6, 6):
            raise InvalidInputError(f"Voigt matrix must be 6x6, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("matrix contains non-finite entries")
        _check_symmetric(v)
        v = np.triu(v) + np.triu(v, 1).T
        v.setflags(write=False)
        object.__setattr__(self, "voigt", v)

    @classmethod
    def from_components(cls, c: ArrayLike) -> "ElasticityTensor":
        """Build from the 21 upper-triangular Voigt entries, row by row."""
        c = np.asarray(c, dtype=float).reshape(21)
        v = np.zeros((6, 6))
        v[_IU] = c
        return cls(np.triu(v) + np.triu(v, 1).T)

    @classmethod
    def from_kelvin(cls, k: ArrayLike) -> "ElasticityTensor":
        k = np.asarray(k, dtype=float)
        _check_symmetric(k)
        return cls(k / _KELVIN_OUTER)

    @classmethod
    def from_full(cls, t: ArrayLike) -> "ElasticityTensor":
        return cls(full_to_voigt(np.asarray(t, dtype=float)))

    @classmethod
    def isotropic(cls, lam: float, mu: float) -> "ElasticityTensor":
        return harmonic_recompose(HarmonicDecomposition(lam, mu))

    @property
    def components(self) -> NDArray:
        return self.voigt[_IU].copy()

    @property
    def kelvin(self) -> NDArray:
        return kelvin_from_components(self)

    @property
    def full(self) -> NDArray:
        return voigt_to_full(self.voigt)

    def norm(self) -> float:
        """Frobenius norm of the Kelvin matrix (equal to that of the full tensor)."""
        return float(np.linalg.norm(self.kelvin))


def kelvin_from_components(c: ElasticityTensor) -> NDArray:
    """Kelvin 6x6 matrix of ``c``."""
    return c.voigt * _KELVIN_OUTER


def components_from_kelvin(k: ArrayLike) -> ElasticityTensor:
    return ElasticityTensor.from_kelvin(k)


def rotate(c: ElasticityTensor, g: Rotation | ArrayLike) -> ElasticityTensor:
    """Action of a rotation on an elasticity tensor."""
    g = as_rotation(g).matrix
    return ElasticityTensor.from_full(rotate4(c.full, g))


def dilatation_voigt(c: ElasticityTensor) -> tuple[NDArray, NDArray]:
    """The two traces ``d_ij = C_kkij`` and ``v_ij = C_kikj``."""
    t = c.full
    return np.einsum("kkij->ij", t), np.einsum("kikj->ij", t)


@dataclass(frozen=True)
class HarmonicDecomposition:
    """The irreducible parts ``(lambda, mu, a, b, D)`` of an elasticity tensor."""

    lam: float
    mu: float
    a: Deviator = field(default_factory=Deviator.zero)
    b: Deviator = field(default_factory=Deviator.zero)
    D: Harmonic4 = field(default_factory=Harmonic4.zero)

    def rotated(self, g: Rotation | ArrayLike) -> "HarmonicDecomposition":
        g = as_rotation(g)
        return HarmonicDecomposition(self.lam, self.mu, self.a.rotated(g), self.b.rotated(g), self.D.rotated(g))


def _low_order_full(lam: float, mu: float, a: NDArray, b: NDArray) -> NDArray:
    q = np.eye(3)
    return (
        lam * np.einsum("ij,kl->ijkl", q, q)
        + mu * (np.einsum("ik,jl->ijkl", q, q) + np.einsum("il,jk->ijkl", q, q))
        + np.einsum("ij,kl->ijkl", q, a)
        + np.einsum("ij,kl->ijkl", a, q)
        + np.einsum("ik,jl->ijkl", q, b)
        + np.einsum("jl,ik->ijkl", q, b)
        + np.einsum("il,jk->ijkl", q, b)
        + np.einsum("jk,il->ijkl", q, b)
    )


def harmonic_decompose(c: ElasticityTensor) -> HarmonicDecomposition:
    """Split ``c`` into its isotropic scalars, two deviators and the harmonic part."""
    d, v = dilatation_voigt(c)
    trd, trv = np.trace(d), np.trace(v)
    lam = (2.0 * trd - trv) / 15.0
    mu = (-trd + 3.0 * trv) / 30.0
    devd = d - trd / 3.0 * np.eye(3)
    devv = v - trv / 3.0 * np.eye(3)
    a = (5.0 * devd - 4.0 * devv) / 7.0
    b = (-2.0 * devd + 3.0 * devv) / 7.0
    rest = c.full - _low_order_full(lam, mu, a, b)
    return HarmonicDecomposition(
        lam, mu, Deviator.dev(a), Deviator.dev(b), Harmonic4.from_full(rest, tol=1e-8, scale=c.norm())
    )


def harmonic_recompose(parts: HarmonicDecomposition) -> ElasticityTensor:
    """Assemble an elasticity tensor from its irreducible parts."""
    for name in ("a", "b"):
        if not isinstance(getattr(parts, name), Deviator):
            raise InvalidPartError(f"part {name} must be a Deviator")
    if not isinstance(parts.D, Harmonic4):
        raise InvalidPartError("part D must be a Harmonic4")
    t = _low_order_full(parts.lam, parts.mu, parts.a.matrix, parts.b.matrix)
    return ElasticityTensor(full_to_voigt(t) + parts.D.voigt)


def isotropic_kelvin(lam: float, mu: float) -> NDArray:
    """Kelvin matrix of the isotropic tensor ``lam q x q + 2 mu Id``."""
    k = np.zeros((6, 6))
    k[:3, :3] = lam
    k += 2.0 * mu * np.eye(6)
    return k


def is_totally_symmetric(t: NDArray, tol: float = 1e-10) -> bool:
    scale = max(np.linalg.norm(t), 1e-300)
    return all(
        np.linalg.norm(t - t.transpose(p)) <= tol * scale for p in itertools.permutations(range(4))
    )
