"""Affine pencil test on defining polynomials of the components.

A reduced curve with components f_1, ..., f_s (s >= 2) is of affine pencil
type when f_i = c_i (f + lambda_i) for one polynomial f and distinct
constants lambda_i.  Polynomials are bivariate in x, y with rational
coefficients, stored as ``LaurentPoly`` with two variables and nonnegative
exponents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .laurent import LaurentPoly, parse_poly

AffinePoly = LaurentPoly
VARS = ("x", "y")


def parse_affine(text: str) -> AffinePoly:
    p = parse_poly(text, names=VARS)
    if any(a < 0 for e in p.terms for a in e):
        raise ValueError(f"negative exponent in affine polynomial {text!r}")
    return p


def load_components(path: str | Path) -> list[AffinePoly]:
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_affine(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out


def total_degree(p: AffinePoly) -> int:
    return max((sum(e) for e in p.terms), default=0)


def constant_term(p: AffinePoly) -> Fraction:
    return Fraction(p.terms.get((0, 0), 0))


def nonconstant_part(p: AffinePoly) -> AffinePoly:
    return LaurentPoly(2, {e: c for e, c in p.terms.items() if any(e)})


def _lc(p: AffinePoly) -> Fraction:
    return Fraction(p.leading()[1])


def _primitive(p: AffinePoly) -> AffinePoly:
    """Scale by a positive rational to primitive integer coefficients (sign kept)."""
    c = p.content()
    return LaurentPoly(2, {e: Fraction(v) / c for e, v in p.terms.items()})


@dataclass(frozen=True)
class PencilVerdict:
    is_pencil: bool
    reason: str = ""
    f: AffinePoly | None = None
    lambdas: tuple[Fraction, ...] = ()
    scales: tuple[Fraction, ...] = field(default=())

    @property
    def label(self) -> str:
        return "PENCIL" if self.is_pencil else "NOT_PENCIL"

    def to_dict(self) -> dict:
        d: dict = {"verdict": self.label}
        if self.is_pencil:
            d["f"] = self.f.format(VARS)
            d["lambda"] = [str(l) for l in self.lambdas]
            d["scale"] = [str(c) for c in self.scales]
        else:
            d["reason"] = self.reason
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def pencil_check(components: Sequence[AffinePoly]) -> PencilVerdict:
    """Decide affine pencil type for the given (claimed irreducible) components.

    Raises ``ValueError`` on a constant component or on two components that
    define the same curve.
    """
    comps = list(components)
    for i, f in enumerate(comps):
        if f.nvars != 2:
            raise ValueError("components must be polynomials in x and y")
        if f.is_constant():
            raise ValueError(f"component {i + 1} is constant")
    for i in range(len(comps)):
        for j in range(i):
            if comps[i] * _lc(comps[j]) == comps[j] * _lc(comps[i]):
                raise ValueError(f"components {j + 1} and {i + 1} define the same curve")
    if len(comps) < 2:
        return PencilVerdict(False, "an affine pencil needs at least two components")
    degs = {total_degree(f) for f in comps}
    if len(degs) > 1:
        return PencilVerdict(False, f"component degrees differ: {sorted(degs)}")
    parts = [nonconstant_part(f) for f in comps]
    g1, lc1 = parts[0], _lc(parts[0])
    for i, g in enumerate(parts[1:], 2):
        if g * lc1 != g1 * _lc(g):
            return PencilVerdict(False, f"nonconstant parts of components 1 and {i} are not proportional")
    f = _primitive(g1)
    lcf = _lc(f)
    scales = tuple(_lc(g) / lcf for g in parts)
    lambdas = tuple(constant_term(p) / c for p, c in zip(comps, scales))
    if len(set(lambdas)) != len(lambdas):
        raise ValueError("components are not distinct curves")
    return PencilVerdict(True, f=f, lambdas=lambdas, scales=scales)


def reconstruct(verdict: PencilVerdict) -> list[AffinePoly]:
    """c_i (f + lambda_i) for each component of a pencil verdict."""
    if not verdict.is_pencil:
        raise ValueError("not a pencil")
    return [(verdict.f + LaurentPoly.const(2, lam)) * c for lam, c in zip(verdict.lambdas, verdict.scales)]
