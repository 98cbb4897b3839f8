"""Covariant matrices ``d2 .. d10`` of a harmonic tensor and the invariants ``J2 .. J10``.

Notation: ``D^2`` is the composition ``D_ijmn D_mnkl``, ``T:a`` the double
contraction ``T_ijkl a_kl`` and ``sym(x) = (x + x^T)/2``.

=====  ===================================
``d2``   ``(D^2)_kikj``
``d3``   ``(D^3)_kikj``
``d4``   ``d2 d2``
``d5``   ``sym(d2 (D:d2))``
``d6``   ``d2 d2 d2``
``d7``   ``sym(d4 (D:d2))``
``d8``   ``sym(d4 (D^2:d2))``
``d9``   ``sym(d4 (D:d4))``
``d10``  ``sym(d4 (D^2:d4))``
=====  ===================================

Only the traces enter the classification, and ``tr(x y)`` does not depend on
the order of the factors, so the symmetrization only fixes which matrix is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from numpy.typing import NDArray

from .tencore import Harmonic4, isotropic_kelvin

DEGREES = tuple(range(2, 11))
DEFAULT_TOL_ZERO = 1e-10


class ZeroTensorError(ValueError):
    """The harmonic tensor is numerically zero, so normalized invariants do not exist."""


def _sym(x: NDArray) -> NDArray:
    return 0.5 * (x + x.T)


def _ddot(t: NDArray, a: NDArray) -> NDArray:
    return np.einsum("ijkl,kl->ij", t, a)


@dataclass(frozen=True)
class CovariantSet:
    """The nine covariant symmetric matrices ``d2 .. d10``."""

    d2: NDArray
    d3: NDArray
    d4: NDArray
    d5: NDArray
    d6: NDArray
    d7: NDArray
    d8: NDArray
    d9: NDArray
    d10: NDArray

    def as_list(self) -> list[NDArray]:
        return [getattr(self, f"d{k}") for k in DEGREES]

    def traces(self) -> NDArray:
        return np.array([np.trace(m) for m in self.as_list()])


def covariants(D: Harmonic4) -> CovariantSet:
    t = D.full
    t2 = np.einsum("ijmn,mnkl->ijkl", t, t)
    t3 = np.einsum("ijmn,mnkl->ijkl", t2, t)
    d2 = _sym(np.einsum("kikj->ij", t2))
    d3 = _sym(np.einsum("kikj->ij", t3))
    d4 = _sym(d2 @ d2)
    return CovariantSet(
        d2=d2,
        d3=d3,
        d4=d4,
        d5=_sym(d2 @ _ddot(t, d2)),
        d6=_sym(d4 @ d2),
        d7=_sym(d4 @ _ddot(t, d2)),
        d8=_sym(d4 @ _ddot(t2, d2)),
        d9=_sym(d4 @ _ddot(t, d4)),
        d10=_sym(d4 @ _ddot(t2, d4)),
    )


@dataclass(frozen=True)
class InvariantVector:
    """``J2 .. J10`` together with the length scale used for zero tests.

    ``scale`` is the Frobenius norm of the tensor the invariants were taken
    from (the elasticity tensor when ``D`` came out of a decomposition).
    """

    values: NDArray
    scale: float = 1.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(9)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "scale", float(self.scale) if self.scale > 0 else 1.0)

    def __getitem__(self, k: int) -> float:
        """``J[k]`` is ``Jk`` for ``k`` in 2..10."""
        if k not in DEGREES:
            raise KeyError(k)
        return float(self.values[k - 2])

    def as_dict(self) -> dict[str, float]:
        return {f"J{k}": float(v) for k, v in zip(DEGREES, self.values)}

    def scaled(self, t: float) -> "InvariantVector":
        """Invariants of ``tD``."""
        return InvariantVector(self.values * t ** np.array(DEGREES, dtype=float), abs(t) * self.scale)

    def is_zero(self, tol_zero: float = DEFAULT_TOL_ZERO) -> bool:
        return self[2] <= (tol_zero * self.scale) ** 2


@dataclass(frozen=True)
class NormalizedInvariants:
    """Scale-free invariants ``jk = Jk / J2^(k/2)``; ``j2`` is 1 by construction."""

    values: NDArray

    def __getitem__(self, k: int) -> float:
        if k not in DEGREES:
            raise KeyError(k)
        return float(self.values[k - 2])

    def as_dict(self) -> dict[str, float]:
        return {f"J{k}": float(v) for k, v in zip(DEGREES, self.values)}


def boehler_invariants(D: Harmonic4, scale: float | None = None) -> InvariantVector:
    """``Jk = tr(dk)``.  ``scale`` defaults to the norm of ``D`` itself."""
    if scale is None:
        scale = D.norm()
    return InvariantVector(covariants(D).traces(), scale)


def normalize(J: InvariantVector, tol_zero: float = DEFAULT_TOL_ZERO) -> NormalizedInvariants:
    if J.is_zero(tol_zero):
        raise ZeroTensorError("D is numerically zero; normalization undefined")
    j2 = J[2]
    return NormalizedInvariants(J.values / j2 ** (np.array(DEGREES) / 2.0))


class CharacteristicPolynomial(NamedTuple):
    """Coefficients of ``det(z - D)`` from ``z^6`` down to ``z^0``."""

    from_invariants: NDArray
    from_eigenvalues: NDArray


def charpoly_from_invariants(J: InvariantVector) -> NDArray:
    j2, j3, j4, j5 = J[2], J[3], J[4], J[5]
    return np.array(
        [1.0, 0.0, -j2 / 2.0, -j3 / 3.0, (j2**2 - 2.0 * j4) / 5.0, 2.0 / 25.0 * (j2 * j3 - 3.0 * j5), 0.0]
    )


def characteristic_polynomial(D: Harmonic4) -> CharacteristicPolynomial:
    eig = np.linalg.eigvalsh(D.kelvin)
    return CharacteristicPolynomial(charpoly_from_invariants(boehler_invariants(D)), np.poly(eig))


def betten_identity_residual(D: Harmonic4, samples: Iterable[tuple[float, float]]) -> float:
    """Largest relative gap between ``det(D - C_iso(lam, mu))`` and ``(3 lam + 2 mu) chi_r(2 mu)``.

    ``chi_r`` is the characteristic polynomial divided by ``z``.  The gap is
    taken relative to the larger side, with a floor of ``1e-6 s^6`` where
    ``s = |D - C_iso| / sqrt(6)`` bounds the determinant (Hadamard), so that
    samples on ``3 lam + 2 mu = 0`` stay well defined.
    """
    k = D.kelvin
    chi_r = charpoly_from_invariants(boehler_invariants(D))[:-1]
    worst = 0.0
    for lam, mu in samples:
        m = k - isotropic_kelvin(lam, mu)
        lhs = np.linalg.det(m)
        rhs = (3.0 * lam + 2.0 * mu) * np.polyval(chi_r, 2.0 * mu)
        s6 = (np.linalg.norm(m) / np.sqrt(6.0)) ** 6
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-6 * s6, 1e-300))
    return worst
