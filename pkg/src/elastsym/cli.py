"""Command-line front end: ``classify``, ``generate`` and ``tables``.

Input files hold a JSON array of records ``{"id", "format", "matrix",
"units"}`` where ``matrix`` is a 6x6 array, either nested or as 36 row-major
numbers.  Reports are JSON (default) or plain text.  Exit status is 0 on
success and 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Sequence, TextIO

import numpy as np

from . import __version__, grouptab
from . import h4strata as h4
from .classifier import (
    DegenerateParametersError,
    LowParts,
    Sample,
    Tolerances,
    classify,
    generate_sample,
    nearest_class,
    sample_lowparts,
    sample_params,
)
from .h4strata import H4Class
from .invariants import DEFAULT_TOL_ZERO
from .tencore import ElasticityTensor, InvalidInputError, Rotation

EXIT_OK = 0
EXIT_INPUT = 2
FORMATS = ("voigt", "kelvin")


class InputError(ValueError):
    """A file or record could not be read."""


@dataclass(frozen=True)
class InputRecord:
    id: str
    format: str
    matrix: np.ndarray
    units: str | None = None

    def tensor(self) -> ElasticityTensor:
        if self.format == "kelvin":
            return ElasticityTensor.from_kelvin(self.matrix)
        return ElasticityTensor(self.matrix)


def _clean(x: Any) -> Any:
    """JSON-ready copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def dumps(obj: Any) -> str:
    """Deterministic JSON; floats use the shortest round-trip representation."""
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def parse_matrix(m: Any) -> np.ndarray:
    try:
        a = np.asarray(m, dtype=float)
    except (TypeError, ValueError) as e:
        raise InputError(f"matrix is not numeric: {e}") from None
    if a.size != 36 or a.ndim not in (1, 2) or (a.ndim == 2 and a.shape != (6, 6)):
        raise InputError(f"matrix must be 6x6 or 36 numbers, got shape {a.shape}")
    a = a.reshape(6, 6)
    if not np.all(np.isfinite(a)):
        raise InputError("matrix contains non-finite entries")
    return a


def parse_records(data: Any, default_format: str = "voigt") -> list[InputRecord | InputError]:
    """Records of a decoded JSON document; malformed ones become ``InputError`` entries."""
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise InputError("input must be a JSON array of records")
    out: list[InputRecord | InputError] = []
    for k, r in enumerate(data):
        rid = str(r.get("id", k)) if isinstance(r, dict) else str(k)
        try:
            if not isinstance(r, dict) or "matrix" not in r:
                raise InputError("record must be an object with a 'matrix' field")
            fmt = str(r.get("format", default_format)).lower()
            if fmt not in FORMATS:
                raise InputError(f"unknown format {fmt!r}")
            rec = InputRecord(rid, fmt, parse_matrix(r["matrix"]), r.get("units"))
            rec.tensor()
            out.append(rec)
        except (InputError, InvalidInputError) as e:
            out.append(InputError(f"record {rid}: {e}"))
    return out


def read_source(path: str, stdin: TextIO) -> Any:
    try:
        text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None


def _nearest(J, tol: Tolerances) -> list[dict]:
    return [
        {"transition": name, "target": H4Class.from_label(name.split("->")[1]).label, "residual": r}
        for name, r in h4.bifurcation_path(J, tol.syzygy, tol.zero)
    ]


def report(rec: InputRecord, tol: Tolerances, strict_mga: bool) -> dict:
    cert = classify(rec.tensor(), tol, strict_mga)
    out = {"id": rec.id, "format": rec.format}
    if rec.units is not None:
        out["units"] = rec.units
    out.update(cert.as_dict())
    out["bifurcations"] = [] if cert.invariants.is_zero(tol.zero) else _nearest(cert.invariants, tol)
    near = nearest_class(cert.invariants, tol) if cert.cls in (H4Class.MONOCLINIC, H4Class.TRICLINIC) else None
    out["nearest"] = None if near is None else {"class": near[0].label, "residual": near[1]}
    return out


def _fmt(x: Any) -> str:
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def render_text(r: dict) -> str:
    if "error" in r:
        return f"{r['id']}: error: {r['error']}\n"
    lines = [f"{r['id']}: {r['class']} ({r['group']})"]
    lines.append(f"  branch {r['branch']}, tuple class {r['tuple_class']}, MGA {'ok' if r['mga_ok'] else 'violated'}")
    if r["params"]:
        lines.append("  params " + ", ".join(f"{k}={_fmt(v)}" for k, v in r["params"].items()))
    for w in r["warnings"]:
        lines.append(f"  warning: {w}")
    b = r.get("bifurcations") or []
    near = r.get("nearest")
    if near:
        lines.append(f"  hint: nearest class is {near['class']} (residual {_fmt(near['residual'])})")
    elif b:
        lines.append("  bifurcations " + ", ".join(f"{t['transition']}={_fmt(t['residual'])}" for t in b))
    return "\n".join(lines) + "\n"


def cmd_classify(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    try:
        tol = Tolerances(args.tol_syzygy, args.tol_zero)
    except InvalidInputError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    status = EXIT_OK
    reports: list[dict] = []
    for path in args.files or ["-"]:
        try:
            records = parse_records(read_source(path, stdin), args.format)
        except InputError as e:
            stderr.write(f"error: {e}\n")
            reports.append({"id": path, "error": str(e)})
            status = EXIT_INPUT
            continue
        for k, rec in enumerate(records):
            if isinstance(rec, InputError):
                stderr.write(f"error: {path}: {rec}\n")
                reports.append({"id": f"{path}#{k}", "error": str(rec)})
                status = EXIT_INPUT
            else:
                reports.append(report(rec, tol, args.strict_mga))
    if args.output_format == "text":
        stdout.write("".join(render_text(r) for r in reports))
    else:
        stdout.write(dumps({"version": __version__, "reports": reports}))
    return status


def _parse_params(items: Sequence[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for it in items:
        key, sep, val = it.partition("=")
        if not sep:
            raise InputError(f"parameter {it!r} is not KEY=VALUE")
        key = key.strip().lower()
        if key == "lambda":
            vals = [float(v) for v in val.split(",")]
            if len(vals) != 3:
                raise InputError("lambda takes three comma-separated values")
            out.update({f"lambda{k + 1}": v for k, v in enumerate(vals)})
        else:
            try:
                out[key] = float(val)
            except ValueError:
                raise InputError(f"parameter {key} is not a number: {val!r}") from None
    return out


_PARAM_KEYS = {
    H4Class.ISOTROPIC: set(),
    H4Class.CUBIC: {"delta"},
    H4Class.TRANSVERSE: {"delta"},
    H4Class.TRIGONAL: {"delta", "sigma"},
    H4Class.TETRAGONAL: {"delta", "sigma"},
    H4Class.ORTHOTROPIC: {"lambda1", "lambda2", "lambda3"},
    H4Class.MONOCLINIC: {f"h{k}" for k in (1, 3, 7, 8, 9)},
    H4Class.TRICLINIC: {f"h{k}" for k in range(1, 10)},
}


def build_sample(cls: H4Class, params: dict[str, float], seed: int, rotate: bool, lam: float, mu: float) -> Sample:
    """Deterministic sample for the ``generate`` command."""
    rng = np.random.default_rng(seed)
    allowed = _PARAM_KEYS[cls]
    unknown = set(params) - allowed
    if unknown:
        raise InputError(f"unknown parameters for {cls.label}: {', '.join(sorted(unknown))}")
    if not params and allowed:
        params = sample_params(cls, rng)
    elif allowed - set(params) and cls not in (H4Class.MONOCLINIC, H4Class.TRICLINIC):
        raise InputError(f"{cls.label} needs {', '.join(sorted(allowed))}")
    if cls in (H4Class.MONOCLINIC, H4Class.TRICLINIC):
        drawn = sample_lowparts(cls, rng)
        low = LowParts(lam, mu, drawn.a, drawn.b)
    else:
        low = LowParts(lam, mu)
    g = Rotation.random(rng) if rotate else Rotation.identity()
    return Sample(cls, params, g, low, generate_sample(cls, params, g, low))


def cmd_generate(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    try:
        cls = H4Class.from_label(args.cls)
        s = build_sample(cls, _parse_params(args.param), args.seed, not args.no_rotation, args.lam, args.mu)
    except (InputError, InvalidInputError, DegenerateParametersError, ValueError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    m = s.tensor.kelvin if args.format == "kelvin" else s.tensor.voigt
    prov = s.provenance()
    prov["seed"] = args.seed
    rec = {"id": args.id or f"{cls.label}-seed{args.seed}", "format": args.format, "matrix": m.reshape(36), "provenance": prov}
    text = dumps([rec])
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def cmd_tables(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    if args.output_format == "json":
        stdout.write(dumps(grouptab.tables_json()))
    else:
        stdout.write(grouptab.render_tables())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elastsym", description="Symmetry classes of elasticity tensors.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify the tensors in JSON record files")
    c.add_argument("files", nargs="*", help="JSON files, '-' for stdin (default)")
    c.add_argument("--format", choices=FORMATS, default="voigt", help="default matrix format of records")
    c.add_argument("--tol-syzygy", type=float, default=Tolerances.syzygy)
    c.add_argument("--tol-zero", type=float, default=DEFAULT_TOL_ZERO)
    c.add_argument("--strict-mga", action="store_true", help="cross-check (a, b, d2) against d2 alone")
    c.add_argument("--seed", type=int, default=0, help="accepted for symmetry with generate; unused")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output_format", action="store_const", const="json")
    g.add_argument("--text", dest="output_format", action="store_const", const="text")
    c.set_defaults(output_format="json", func=cmd_classify)

    gen = sub.add_parser("generate", help="write a sample tensor of a given class")
    gen.add_argument("cls", metavar="CLASS", help="class label, e.g. cubic, trigonal, orthotropic")
    gen.add_argument("-p", "--param", action="append", default=[], help="KEY=VALUE, e.g. delta=1 or lambda=1,2,3")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--lam", type=float, default=1.0, help="isotropic part lambda")
    gen.add_argument("--mu", type=float, default=1.0, help="isotropic part mu")
    gen.add_argument("--no-rotation", action="store_true", help="keep the normal-form frame")
    gen.add_argument("--format", choices=FORMATS, default="voigt")
    gen.add_argument("--id", default=None)
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_generate)

    t = sub.add_parser("tables", help="print the stratification tables")
    g = t.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output_format", action="store_const", const="json")
    g.add_argument("--text", dest="output_format", action="store_const", const="text")
    t.set_defaults(output_format="text", func=cmd_tables)
    return p


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    return args.func(args, stdin, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
