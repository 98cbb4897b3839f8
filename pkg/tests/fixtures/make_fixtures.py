"""Regenerate the bundled fixtures: ``python3 tests/fixtures/make_fixtures.py``."""

from pathlib import Path

import numpy as np

from elastsym.classifier import LowParts, add_noise, generate_sample
from elastsym.cli import dumps
from elastsym.h4strata import H4Class
from elastsym.tencore import ElasticityTensor, Rotation

HERE = Path(__file__).parent


def _record(rid: str, C: ElasticityTensor, **extra) -> dict:
    return {"id": rid, "format": "voigt", "matrix": C.voigt.reshape(36), **extra}


def main() -> None:
    iso = ElasticityTensor.isotropic(2.5, 1.25)
    cubic = generate_sample(H4Class.CUBIC, {"delta": 1.0}, Rotation.random(0), LowParts(1.0, 1.0))
    trig = generate_sample(H4Class.TRIGONAL, {"delta": 1.0, "sigma": 2.0}, Rotation.random(1), LowParts(3.0, 2.0))
    noisy = add_noise(trig, 1e-5, np.random.default_rng(2))
    (HERE / "isotropic.json").write_text(dumps([_record("isotropic", iso, units="GPa")]))
    (HERE / "cubic.json").write_text(dumps([_record("cubic-delta1", cubic)]))
    (HERE / "trigonal_perturbed.json").write_text(dumps([_record("trigonal-perturbed", noisy)]))


if __name__ == "__main__":
    main()
