"""Exact multivariate Laurent polynomials over Z and Q.

Arithmetic, parsing and exact division are done here; the multivariate gcd
is delegated to sympy's polynomial gcd after shifting into the polynomial
ring.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

import sympy

from .words import Number, _clean

Exponent = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Number] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, Number] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                clean[e] = _clean(c)
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Number) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Number = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_unit(self) -> bool:
        """Units of Z[t^±]: ± monomials."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == LaurentPoly.const(self.nvars, other).terms
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self.nvars, acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | Number") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        acc: dict[Exponent, Number] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly(self.nvars, {tuple(a * n for a in e): Fraction(1) / Fraction(c) ** -n})
        out = LaurentPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    # structure ----------------------------------------------------------
    def leading(self) -> tuple[Exponent, Number]:
        """Lexicographically largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, by: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, by)): c for e, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        fr = [Fraction(c) for c in self.terms.values()]
        num = reduce(igcd, (abs(f.numerator) for f in fr))
        den = reduce(lambda a, b: a * b // igcd(a, b), (f.denominator for f in fr))
        return Fraction(num, den)

    def evaluate_exponents(self, images: Sequence[Sequence[int]], nvars: int) -> "LaurentPoly":
        """Monomial substitution t_i -> t^{images[i]} into ``nvars`` variables."""
        acc: dict[Exponent, Number] = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for a, img in zip(e, images):
                if a:
                    for k, v in enumerate(img):
                        new[k] += a * v
            key = tuple(new)
            acc[key] = acc.get(key, 0) + c
        return LaurentPoly(nvars, acc)

    # printing -----------------------------------------------------------
    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(f"{sign} {body}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {dict(sorted(self.terms.items()))!r})"


def default_names(nvars: int) -> list[str]:
    return ["t"] if nvars == 1 else [f"t{i + 1}" for i in range(nvars)]


# normalization / gcd -----------------------------------------------------

def poly_normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate under the units ± monomial of Z[t^±]."""
    if p.is_zero():
        return p
    q = p.shift([-a for a in p.min_exponents()])
    _, lc = q.leading()
    return -q if lc < 0 else q


def content_stripped(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate in Q[t^±]: primitive integer coefficients."""
    if p.is_zero():
        return p
    q = poly_normalize(p)
    c = q.content()
    return LaurentPoly(q.nvars, {e: Fraction(v) / c for e, v in q.terms.items()})


def _to_sympy(p: LaurentPoly, gens) -> sympy.Poly:
    q = p.shift([-a for a in p.min_exponents()]) if p.terms else p
    return sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                                 for e, c in q.terms.items()} or {(0,) * p.nvars: 0}, *gens)


def _from_sympy(sp: sympy.Poly, nvars: int) -> LaurentPoly:
    terms: dict[Exponent, Number] = {}
    for e, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = int(c) if c.q == 1 else Fraction(int(c.p), int(c.q))
    return LaurentPoly(nvars, terms)


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Canonical gcd in Z[t^±] (integer content included)."""
    p._check(q)
    if p.is_zero():
        return poly_normalize(q)
    if q.is_zero():
        return poly_normalize(p)
    if p.is_unit() or q.is_unit():
        return LaurentPoly.const(p.nvars, 1)
    if p.nvars == 0:
        return LaurentPoly.const(0, igcd(int(next(iter(p.terms.values()))), int(next(iter(q.terms.values())))))
    gens = sympy.symbols(f"x0:{p.nvars}")
    if not (p.is_integral() and q.is_integral()):
        g = sympy.gcd(_to_sympy(p, gens), _to_sympy(q, gens))
        return content_stripped(_from_sympy(g, p.nvars))
    g = sympy.gcd(_to_sympy(p, gens), _to_sympy(q, gens))
    return poly_normalize(_from_sympy(g, p.nvars))


def poly_gcd_list(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    g = LaurentPoly.zero(nvars)
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_unit():
            break
    return g


def exact_quotient(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Return ``num / den`` in Q[t^±] if it divides exactly, else ``None``.

    Multivariate division with lex order after shifting both to polynomials;
    ``den`` is shifted to have no monomial factor, so polynomial and Laurent
    divisibility coincide.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return num
    dshift = [-a for a in den.min_exponents()]
    nshift = [-a for a in num.min_exponents()]
    d = den.shift(dshift)
    r = dict(num.shift(nshift).terms)
    lead_e, lead_c = d.leading()
    quot: dict[Exponent, Number] = {}
    while r:
        e = max(r)
        diff = tuple(a - b for a, b in zip(e, lead_e))
        if any(x < 0 for x in diff):
            return None
        c = Fraction(r[e]) / lead_c
        quot[diff] = c
        for de, dc in d.terms.items():
            k = tuple(a + b for a, b in zip(de, diff))
            v = r.get(k, 0) - c * dc
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    q = LaurentPoly(num.nvars, quot)
    return q.shift([a - b for a, b in zip(dshift, nshift)])


def divides(den: LaurentPoly, num: LaurentPoly, over_z: bool = False) -> bool:
    if den.is_zero():
        return num.is_zero()
    q = exact_quotient(num, den)
    if q is None:
        return False
    return q.is_integral() if over_z else True


def associated(p: LaurentPoly, q: LaurentPoly, over_q: bool = False) -> bool:
    if over_q:
        return content_stripped(p) == content_stripped(q)
    return poly_normalize(p) == poly_normalize(q)


# degree / specialization ---------------------------------------------------

def degree_spread(p: LaurentPoly, direction: Sequence[int]) -> int:
    if p.is_zero():
        raise ValueError("degree of the zero polynomial is undefined")
    levels = [sum(a * d for a, d in zip(e, direction)) for e in p.terms]
    return max(levels) - min(levels)


def specialize_psi(p: LaurentPoly, weights: Sequence[int]) -> LaurentPoly:
    """Substitute t_i -> t^{weights[i]}; the result is univariate."""
    return p.evaluate_exponents([[w] for w in weights], 1)


# parsing -------------------------------------------------------------------

_MONO = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?$")


def parse_poly(text: str, names: Sequence[str] | None = None, nvars: int | None = None) -> LaurentPoly:
    """Parse ``t1^2*t2^-1 - 3*t1 + 1`` style input.

    Coefficients may be integers or fractions ``p/q``.  With ``names`` omitted,
    ``t`` is used for one variable and ``t1..ts`` otherwise (``nvars``
    inferred from the largest index seen).
    """
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    if names is None:
        found = [int(i) for i in re.findall(r"t(\d+)", src)]
        if nvars is None:
            nvars = max(found) if found else 1
        names = default_names(nvars)
        if nvars == 1 and re.search(r"t1(?!\d)", src):
            names = ["t1"]
    names = list(names)
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)
    # split into signed terms, respecting '^-' exponents
    terms: list[str] = []
    cur = ""
    for i, ch in enumerate(src):
        if ch in "+-" and cur and not cur.endswith("^") and not cur.endswith("^("):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    acc: dict[Exponent, Number] = {}
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError(f"malformed polynomial {text!r}")
        coef: Number = 1
        exps = [0] * nv
        for factor in term.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coef = coef * Fraction(factor)
                continue
            m = _MONO.match(factor)
            if not m or m.group(1) not in index:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            exps[index[m.group(1)]] += int(m.group(2)) if m.group(2) else 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + sign * coef
    return LaurentPoly(nv, acc)
