"""Symmetry-class identification of 3-D elasticity tensors from polynomial invariants."""

from .tencore import (
    Deviator,
    ElasticityTensor,
    Harmonic4,
    HarmonicDecomposition,
    InvalidInputError,
    InvalidPartError,
    InvalidRotationError,
    Rotation,
    dilatation_voigt,
    harmonic_decompose,
    harmonic_recompose,
    kelvin_from_components,
    rotate,
)

__version__ = "0.1.0"
