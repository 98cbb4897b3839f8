"""Sparse polynomials written as plain text, e.g. ``"192 J6 = -51 J2^3 + 216 J2 J4"``.

Relations are kept as strings in the source so they can be compared line by
line against their published form; this module turns them into term lists
that can be evaluated and normalized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^([A-Za-z]+\d*)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Poly:
    """A polynomial as a tuple of ``(coefficient, ((var, power), ...))`` terms."""

    terms: tuple[tuple[Fraction, tuple[tuple[str, int], ...]], ...]

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse ``"lhs = rhs"`` (moved to ``lhs - rhs``) or a bare expression."""
        if "=" in text:
            lhs, rhs = text.split("=")
            return _parse_side(lhs).sub(_parse_side(rhs))
        return _parse_side(text)

    def sub(self, other: "Poly") -> "Poly":
        acc: dict[tuple, Fraction] = {}
        for c, m in self.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        for c, m in other.terms:
            acc[m] = acc.get(m, Fraction(0)) - c
        return Poly(tuple((c, m) for m, c in acc.items() if c != 0))

    def weights(self, weight: Mapping[str, int]) -> set[int]:
        """Weighted degrees of all terms; a homogeneous polynomial yields one value."""
        return {sum(weight[v] * p for v, p in m) for _, m in self.terms}

    def evaluate(self, values: Mapping[str, float]) -> float:
        return sum(float(c) * _monomial(m, values) for c, m in self.terms)

    def term_values(self, values: Mapping[str, float]) -> list[float]:
        return [float(c) * _monomial(m, values) for c, m in self.terms]

    def derivative(self, var: str) -> "Poly":
        acc: dict[tuple, Fraction] = {}
        for c, m in self.terms:
            powers = dict(m)
            k = powers.get(var, 0)
            if k == 0:
                continue
            if k == 1:
                del powers[var]
            else:
                powers[var] = k - 1
            key = tuple(sorted(powers.items()))
            acc[key] = acc.get(key, Fraction(0)) + c * k
        if not acc:
            return Poly(((Fraction(0), ()),))
        return Poly(tuple((c, m) for m, c in acc.items()))

    @property
    def coefficient_max(self) -> float:
        return max(abs(float(c)) for c, _ in self.terms)

    @property
    def variables(self) -> set[str]:
        return {v for _, m in self.terms for v, _ in m}


def _monomial(m, values) -> float:
    out = 1.0
    for v, p in m:
        out *= values[v] ** p
    return out


def _parse_side(text: str) -> Poly:
    text = text.replace("−", "-").strip()
    terms = []
    for sign, body in _TERM_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        coef = Fraction(1)
        powers: dict[str, int] = {}
        for tok in body.replace("*", " ").split():
            fm = _FACTOR_RE.match(tok)
            if fm:
                name = fm.group(1)
                powers[name] = powers.get(name, 0) + int(fm.group(2) or 1)
            else:
                coef *= Fraction(tok)
        if sign == "-":
            coef = -coef
        terms.append((coef, tuple(sorted(powers.items()))))
    if not terms:
        return Poly(((Fraction(0), ()),))
    return Poly(tuple(terms))


class PolyBatch:
    """Several polynomials in fixed variables, evaluated together with numpy."""

    def __init__(self, polys: Sequence[Poly], names: Sequence[str]):
        index = {n: k for k, n in enumerate(names)}
        rows, coefs, exps = [], [], []
        for r, p in enumerate(polys):
            for c, m in p.terms:
                e = np.zeros(len(names), dtype=int)
                for v, k in m:
                    e[index[v]] = k
                rows.append(r)
                coefs.append(float(c))
                exps.append(e)
        self.names = tuple(names)
        self.size = len(polys)
        self._rows = np.array(rows, dtype=int)
        self._coefs = np.array(coefs)
        self._exps = np.array(exps, dtype=int).reshape(len(rows), len(names))

    def evaluate(self, x: Sequence[float]) -> np.ndarray:
        """Values at the point ``x`` given in the order of ``names``."""
        mono = np.prod(np.asarray(x, dtype=float) ** self._exps, axis=1)
        return np.bincount(self._rows, self._coefs * mono, minlength=self.size)
