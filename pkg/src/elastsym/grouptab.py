"""Closed subgroups of SO(3): normalizers, fixed-point dimensions and stratification tables.

Subgroups are named by short ids: ``"1"``, ``"Z<n>"``, ``"D<n>"``, ``"T"``,
``"O"``, ``"I"``, ``"SO(2)"``, ``"O(2)"`` and ``"SO(3)"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

INF = None  # cardinality of a continuous monodromy group

_SUBGROUP_RE = re.compile(r"^(Z|D)(\d+)$")


class UnknownSubgroupError(ValueError):
    """The id does not name a supported closed subgroup of SO(3)."""


@dataclass(frozen=True)
class Multiplicities:
    """Multiplicity ``alpha_k`` of each harmonic space ``H^k`` in a representation."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.alpha)
        if any(x < 0 for x in a):
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "alpha", a)

    @property
    def dim(self) -> int:
        return sum(a * (2 * k + 1) for k, a in enumerate(self.alpha))


ELA = Multiplicities((2, 0, 2, 0, 1))
H4 = Multiplicities((0, 0, 0, 0, 1))
S2 = Multiplicities((1, 0, 1))


def quadratic_forms(n: int) -> Multiplicities:
    """``n`` copies of the symmetric 3x3 matrices."""
    return Multiplicities((n, 0, n))


def _parse(h: str) -> tuple[str, int]:
    h = h.strip()
    if h in ("1", "T", "O", "I", "SO(2)", "O(2)", "SO(3)"):
        return h, 0
    m = _SUBGROUP_RE.match(h)
    if m and int(m.group(2)) >= 2:
        return m.group(1), int(m.group(2))
    if h == "Z1":
        return "1", 0
    raise UnknownSubgroupError(f"unknown subgroup {h!r}")


def fixed_point_dim(h: str, m: Multiplicities) -> int:
    """``dim V^H`` for ``V = sum alpha_k H^k``."""
    kind, p = _parse(h)
    a = list(enumerate(m.alpha))
    if kind == "1":
        return m.dim
    if kind == "Z":
        return 2 * sum(x * (k // p) for k, x in a) + sum(x for _, x in a)
    if kind == "D":
        return sum(x * (k // p) for k, x in a) + sum(x for k, x in a if k % 2 == 0)
    if kind == "T":
        return sum(x * (2 * (k // 3) + k // 2 - k + 1) for k, x in a)
    if kind == "O":
        return sum(x * (k // 4 + k // 3 + k // 2 - k + 1) for k, x in a)
    if kind == "I":
        return sum(x * (k // 5 + k // 3 + k // 2 - k + 1) for k, x in a)
    if kind == "SO(2)":
        return sum(x for _, x in a)
    if kind == "O(2)":
        return sum(x for k, x in a if k % 2 == 0)
    return m.alpha[0] if m.alpha else 0


def group_dim(h: str) -> int:
    kind, _ = _parse(h)
    return {"SO(2)": 1, "O(2)": 1, "SO(3)": 3}.get(kind, 0)


def normalizer(h: str) -> str:
    kind, p = _parse(h)
    if kind == "Z":
        return "O(2)"
    if kind == "D":
        return "O" if p == 2 else f"D{2 * p}"
    return {"1": "SO(3)", "T": "O", "O": "O", "I": "I", "SO(2)": "O(2)", "O(2)": "O(2)", "SO(3)": "SO(3)"}[kind]


def monodromy(h: str) -> tuple[str, int | None]:
    """``N(H)/H`` as a name and its cardinality (``None`` when infinite)."""
    kind, p = _parse(h)
    if kind == "1":
        return "SO(3)", INF
    if kind == "Z":
        return "O(2)", INF
    if kind == "D":
        return ("S3", 6) if p == 2 else ("S2", 2)
    if kind in ("T", "SO(2)"):
        return "S2", 2
    return "1", 1


@dataclass(frozen=True)
class StrataDims:
    dim_fixed: int
    dim_orbit_space: int
    dim_stratum: int


@dataclass(frozen=True)
class ClassInfo:
    """Static group data for one isotropy class and its stratum dimensions."""

    subgroup: str
    normalizer: str
    monodromy: str
    monodromy_card: int | None
    ela: StrataDims
    h4: StrataDims

    def dims(self, space: str) -> StrataDims:
        return {"ela": self.ela, "h4": self.h4}[space]


def strata_dims(h: str, m: Multiplicities) -> StrataDims:
    """``dim V^H``, ``dim Sigma_H / G`` and ``dim Sigma_H``."""
    v = fixed_point_dim(h, m)
    n = normalizer(h)
    gamma = group_dim(n) - group_dim(h)
    return StrataDims(v, v - gamma, v + 3 - group_dim(n))


def class_info(h: str) -> ClassInfo:
    _parse(h)
    name, card = monodromy(h)
    return ClassInfo(h, normalizer(h), name, card, strata_dims(h, ELA), strata_dims(h, H4))


ELASTICITY_CLASSES = ("1", "Z2", "D2", "D3", "D4", "O(2)", "O", "SO(3)")
QUADRATIC_CLASSES = ("1", "Z2", "D2", "O(2)", "SO(3)")

_HEADER = ("H", "N(H)", "Gamma", "card", "dim V^H", "dim S/G", "dim S")


def table_rows(space: str = "ela", classes: Sequence[str] = ELASTICITY_CLASSES) -> list[tuple]:
    m = {"ela": ELA, "h4": H4}[space]
    rows = []
    for h in classes:
        name, card = monodromy(h)
        d = strata_dims(h, m)
        rows.append((h, normalizer(h), name, "inf" if card is None else card, d.dim_fixed, d.dim_orbit_space, d.dim_stratum))
    return rows


def render_table(title: str, rows: list[tuple]) -> str:
    cells = [_HEADER] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(_HEADER))]
    rule = "+".join("-" * (w + 2) for w in widths)
    lines = [title, rule]
    for k, r in enumerate(cells):
        lines.append("|".join(f" {c:<{w}} " for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append(rule)
    lines.append(rule)
    return "\n".join(lines) + "\n"


def render_tables() -> str:
    return (
        render_table("Isotropy classes of Ela", table_rows("ela"))
        + "\n"
        + render_table("Isotropy classes of H4", table_rows("h4"))
    )


def tables_json() -> dict:
    keys = ("H", "normalizer", "monodromy", "card", "dim_fixed", "dim_orbit_space", "dim_stratum")
    return {
        space: [dict(zip(keys, (r[0], r[1], r[2], None if r[3] == "inf" else r[3], *r[4:]))) for r in table_rows(space)]
        for space in ("ela", "h4")
    }
