"""Predictions for transversal unions C = C' u C'' and a harness checking them.

Clause labels used in reports:

* ``finite``  delta_n(C) is finite for every n >= 0.
* ``same-type``  both sides irreducible, or both reducible: delta_n(C) = 0.
* ``mixed-nonzero``  C' irreducible with delta_0(C') != 0, C'' reducible:
  delta_0(C) = 0 iff delta_0(C'') is finite, and delta_n(C) = 0 for n >= 1.
* ``mixed-zero``  C' irreducible with delta_0(C') = 0, C'' reducible:
  delta_n(C) = 0 iff delta_n(C'') is finite, for every n.
* ``pencil``  a reducible curve has delta_0 infinite iff it is of affine
  pencil type.
* ``constant``  delta_0(C) = 0 iff the multivariable polynomial is a nonzero
  constant; otherwise it is (t-1)^k, 1 <= k <= m''-1, in the C' meridian t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .alexander import INFINITE, delta_from_multi, format_delta, multi_alexander
from .laurent import LaurentPoly, associated, divides
from .presentations import WeightedPresentation, product_presentation


class Delta0Class(str, Enum):
    ZERO = "ZERO"
    FINITE_NONZERO = "FINITE_NONZERO"
    INFINITE = "INFINITE"
    UNKNOWN = "UNKNOWN"


class PencilType(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


class Finiteness(str, Enum):
    FINITE = "FINITE"
    INFINITE = "INFINITE"
    UNKNOWN = "UNKNOWN"


class Value(str, Enum):
    ZERO = "ZERO"
    FINITE_NONZERO = "FINITE_NONZERO"
    FINITE = "FINITE"
    CONDITIONAL = "CONDITIONAL"


class MultiKind(str, Enum):
    NONZERO_CONSTANT = "NONZERO_CONSTANT"
    T_MINUS_ONE_POWER = "(t-1)^k"
    CONDITIONAL = "CONDITIONAL"


class MetaError(ValueError):
    pass


@dataclass(frozen=True)
class ComponentMeta:
    irreducible: bool
    delta0_class: Delta0Class = Delta0Class.UNKNOWN
    pencil_type: PencilType = PencilType.UNKNOWN
    degree: int | None = None
    s: int = 1
    higher: dict[int, Finiteness] = field(default_factory=dict)
    higher_default: Finiteness = Finiteness.UNKNOWN

    def check(self) -> None:
        if self.irreducible != (self.s == 1):
            raise MetaError("irreducible must agree with s == 1")
        if self.s < 1:
            raise MetaError("s must be positive")
        if self.degree is not None and self.degree < self.s:
            raise MetaError("degree is smaller than the number of components")
        if self.pencil_type is PencilType.YES and self.s < 2:
            raise MetaError("an irreducible curve is not of affine pencil type")
        known = self.delta0_class is not Delta0Class.UNKNOWN
        if known and self.pencil_type is PencilType.YES and self.delta0_class is not Delta0Class.INFINITE:
            raise MetaError("pencil type forces delta_0 infinite")
        if known and self.pencil_type is PencilType.NO and self.delta0_class is Delta0Class.INFINITE:
            raise MetaError("delta_0 infinite forces pencil type")
        if self.irreducible:
            if self.delta0_class is Delta0Class.INFINITE:
                raise MetaError("irreducible curves have finite delta_0")
            if Finiteness.INFINITE in (self.higher_default, *self.higher.values()):
                raise MetaError("irreducible curves have finite delta_n")
        if any(n < 1 for n in self.higher):
            raise MetaError("higher finiteness flags are indexed by n >= 1")

    @property
    def delta0_effective(self) -> Delta0Class:
        if self.delta0_class is Delta0Class.UNKNOWN:
            if self.pencil_type is PencilType.YES:
                return Delta0Class.INFINITE
        return self.delta0_class

    def finiteness0(self) -> Finiteness:
        d = self.delta0_effective
        if d is Delta0Class.INFINITE:
            return Finiteness.INFINITE
        if d is Delta0Class.UNKNOWN:
            return Finiteness.FINITE if self.pencil_type is PencilType.NO else Finiteness.UNKNOWN
        return Finiteness.FINITE

    def finiteness(self, n: int) -> Finiteness:
        if n == 0:
            return self.finiteness0()
        if self.irreducible:
            return Finiteness.FINITE
        return self.higher.get(n, self.higher_default)


@dataclass(frozen=True)
class Prediction:
    value: Value
    clause: str
    condition: str = ""

    def to_dict(self) -> dict:
        d = {"value": self.value.value, "clause": self.clause}
        if self.condition:
            d["condition"] = self.condition
        return d


@dataclass(frozen=True)
class MultiClass:
    kind: MultiKind
    clause: str
    k_min: int | None = None
    k_max: int | None = None
    condition: str = ""

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "clause": self.clause}
        if self.kind is MultiKind.T_MINUS_ONE_POWER:
            d["k_range"] = [self.k_min, self.k_max]
        if self.condition:
            d["condition"] = self.condition
        return d


@dataclass(frozen=True)
class PredictionReport:
    level0: Prediction
    higher: Prediction
    multi: MultiClass
    swapped: bool
    levels: dict[int, Prediction] = field(default_factory=dict)
    always_finite: str = "finite"

    def at(self, n: int) -> Prediction:
        if n == 0:
            return self.level0
        return self.levels.get(n, self.higher)

    def to_dict(self) -> dict:
        return {
            "swapped": self.swapped,
            "delta_0": self.level0.to_dict(),
            "delta_n>=1": self.higher.to_dict(),
            "levels": {str(n): p.to_dict() for n, p in sorted(self.levels.items())},
            "multi": self.multi.to_dict(),
            "finite_at_every_level": self.always_finite,
        }


def _orient(left: ComponentMeta, right: ComponentMeta) -> tuple[ComponentMeta, ComponentMeta, bool]:
    left.check()
    right.check()
    if not left.irreducible and right.irreducible:
        return right, left, True
    return left, right, False


def _from_finiteness(f: Finiteness, clause: str, condition: str) -> Prediction:
    if f is Finiteness.FINITE:
        return Prediction(Value.ZERO, clause)
    if f is Finiteness.INFINITE:
        return Prediction(Value.FINITE_NONZERO, clause)
    return Prediction(Value.CONDITIONAL, clause, condition)


def predict_union(left: ComponentMeta, right: ComponentMeta) -> PredictionReport:
    a, b, swapped = _orient(left, right)
    if a.irreducible == b.irreducible:
        zero = Prediction(Value.ZERO, "same-type")
        return PredictionReport(zero, zero, _multi_from(zero, a, b), swapped)

    d0 = a.delta0_class
    clause0 = {Delta0Class.FINITE_NONZERO: "mixed-nonzero", Delta0Class.ZERO: "mixed-zero"}.get(
        d0, "mixed-nonzero/mixed-zero")
    if b.delta0_class is Delta0Class.UNKNOWN and b.pencil_type is not PencilType.UNKNOWN:
        clause0 += " + pencil"
    level0 = _from_finiteness(b.finiteness(0), clause0, "delta_0(C'') finite")
    flagged = sorted(b.higher)
    if d0 is Delta0Class.FINITE_NONZERO:
        higher = Prediction(Value.ZERO, "mixed-nonzero")
        levels = {}
    elif d0 is Delta0Class.ZERO:
        higher = _from_finiteness(b.higher_default, "mixed-zero", "delta_n(C'') finite")
        levels = {n: _from_finiteness(b.finiteness(n), "mixed-zero", f"delta_{n}(C'') finite") for n in flagged}
    else:
        # both branches agree on ZERO whenever delta_n(C'') is finite
        def either(f: Finiteness) -> Prediction:
            if f is Finiteness.FINITE:
                return Prediction(Value.ZERO, "mixed-nonzero/mixed-zero")
            return Prediction(Value.CONDITIONAL, "mixed-nonzero/mixed-zero",
                              "delta_0(C') != 0 or delta_n(C'') finite")
        higher = either(b.higher_default)
        levels = {n: either(b.finiteness(n)) for n in flagged}
    return PredictionReport(level0, higher, _multi_from(level0, a, b), swapped, levels)


def _multi_from(level0: Prediction, a: ComponentMeta, b: ComponentMeta) -> MultiClass:
    if level0.value is Value.ZERO:
        return MultiClass(MultiKind.NONZERO_CONSTANT, "constant")
    if level0.value is Value.FINITE_NONZERO:
        m2 = b.degree
        return MultiClass(MultiKind.T_MINUS_ONE_POWER, "constant", 1, None if m2 is None else m2 - 1)
    return MultiClass(MultiKind.CONDITIONAL, "constant", condition=level0.condition)


def classify_multi(left: ComponentMeta, right: ComponentMeta) -> MultiClass:
    return predict_union(left, right).multi


# cross-check against direct computation -----------------------------------

@dataclass(frozen=True)
class Assertion:
    name: str
    passed: bool | None
    detail: str = ""

    def to_dict(self) -> dict:
        status = "skip" if self.passed is None else ("pass" if self.passed else "fail")
        return {"name": self.name, "status": status, "detail": self.detail}


@dataclass(frozen=True)
class CrosscheckReport:
    prediction: PredictionReport
    multi: LaurentPoly
    delta0: int | object
    assertions: tuple[Assertion, ...]

    @property
    def ok(self) -> bool:
        return all(a.passed is not False for a in self.assertions)

    @property
    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if a.passed is False]

    def to_dict(self) -> dict:
        return {
            "prediction": self.prediction.to_dict(),
            "computed": {"multi": self.multi.format(), "delta0": format_delta(self.delta0)},
            "assertions": [a.to_dict() for a in self.assertions],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def meta_from_presentation(P: WeightedPresentation, pencil: PencilType = PencilType.UNKNOWN,
                           compute: bool = True) -> ComponentMeta:
    """Metadata for one side; delta_0 is computed directly when ``compute``."""
    d0 = Delta0Class.UNKNOWN
    if compute:
        d = delta_from_multi(multi_alexander(P))
        d0 = Delta0Class.INFINITE if d is INFINITE else (Delta0Class.ZERO if d == 0 else Delta0Class.FINITE_NONZERO)
    degree = sum(P.degrees) if P.degrees else None
    return ComponentMeta(P.s == 1, d0, pencil, degree, P.s)


def crosscheck(P1: WeightedPresentation, P2: WeightedPresentation,
               meta1: ComponentMeta, meta2: ComponentMeta) -> CrosscheckReport:
    pred = predict_union(meta1, meta2)
    left, right, mr = (P2, P1, meta1) if pred.swapped else (P1, P2, meta2)
    U = product_presentation(left, right)
    multi = multi_alexander(U)
    d = delta_from_multi(multi)
    checks: list[Assertion] = []

    checks.append(Assertion("delta_0 finite", d is not INFINITE, f"computed {format_delta(d)}"))

    v = pred.level0.value
    if v is Value.ZERO:
        checks.append(Assertion("delta_0 prediction", d == 0, f"predicted ZERO, computed {format_delta(d)}"))
    elif v is Value.FINITE_NONZERO:
        ok = d is not INFINITE and d > 0
        checks.append(Assertion("delta_0 prediction", ok, f"predicted FINITE_NONZERO, computed {format_delta(d)}"))
    else:
        checks.append(Assertion("delta_0 prediction", None, "prediction is conditional"))

    kind = pred.multi.kind
    const = not multi.is_zero() and multi.is_constant()
    if kind is MultiKind.NONZERO_CONSTANT:
        checks.append(Assertion("multi class", const, f"expected nonzero constant, got {multi.format()}"))
    elif kind is MultiKind.T_MINUS_ONE_POWER:
        checks.append(Assertion("multi class", _is_t_minus_one_power(multi, pred.multi),
                                f"expected (t-1)^k, k in [{pred.multi.k_min}, {pred.multi.k_max}], got {multi.format()}"))
    else:
        checks.append(Assertion("multi class", None, "classification is conditional"))

    if left.s == 1 and not right.s == 1:
        m2 = mr.degree if mr.degree is not None else (sum(right.degrees) if right.degrees else None)
        if m2 is None:
            checks.append(Assertion("divides (t-1)^(m''-1)", None, "degree of C'' unknown"))
        else:
            bound = _t_minus_one(U.s, m2 - 1)
            checks.append(Assertion("divides (t-1)^(m''-1)", divides(multi, bound),
                                    f"m'' = {m2}, computed {multi.format()}"))
    return CrosscheckReport(pred, multi, d, tuple(checks))


def _t_minus_one(nvars: int, k: int) -> LaurentPoly:
    t = LaurentPoly.var(nvars, 0) - LaurentPoly.const(nvars, 1)
    return t ** k


def _is_t_minus_one_power(p: LaurentPoly, mc: MultiClass) -> bool:
    if p.is_zero() or p.is_constant():
        return False
    if any(any(e[1:]) for e in p.terms):
        return False
    k = max(e[0] for e in p.terms) - min(e[0] for e in p.terms)
    if k < (mc.k_min or 1) or (mc.k_max is not None and k > mc.k_max):
        return False
    return associated(p, _t_minus_one(p.nvars, k), over_q=True)
