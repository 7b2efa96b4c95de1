"""Session context for the skew engine: the extended alphabet and its arithmetic.

Letters are integer indices laid out as

* ``0 .. m-1``        generators of the presentation,
* ``m .. m+s-1``      torus letters ``_t1 .. _ts`` (level 0 canonical forms),
* ``m+s ..``          named symbols bound by ``let`` (or created by pivots).

A symbol abbreviates a group-ring element.  Its positive letter may always be
expanded into the definition; its inverse letter is only legal once the
symbol is certified as a unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from ..laurent import LaurentPoly, exact_quotient
from ..presentations import WeightedPresentation
from ..words import IDENTITY, Number, RingElement, Word
from .facts import FactSet, RewriteSystem


class ExprError(ValueError):
    pass


@dataclass(frozen=True)
class Symbol:
    name: str
    definition: RingElement
    level: int | None
    unit: bool = False


@dataclass(frozen=True)
class Context:
    P: WeightedPresentation
    level: int
    facts: FactSet = field(default_factory=FactSet)
    symbols: tuple[Symbol, ...] = ()
    rewrite: RewriteSystem = field(default_factory=RewriteSystem)

    @classmethod
    def create(cls, P: WeightedPresentation, level: int, facts: FactSet | None = None) -> "Context":
        facts = facts or FactSet()
        ctx = cls(P, level, facts)
        if level >= 1:
            ctx = replace(ctx, rewrite=RewriteSystem(tuple(facts.rules(P.relators))))
        return ctx

    # alphabet ---------------------------------------------------------
    @property
    def m(self) -> int:
        return self.P.m

    @property
    def s(self) -> int:
        return self.P.s

    @property
    def sym0(self) -> int:
        return self.m + self.s

    def torus_names(self) -> list[str]:
        return [f"_t{c + 1}" for c in range(self.s)]

    def names(self) -> list[str]:
        return list(self.P.names) + self.torus_names() + [s.name for s in self.symbols]

    def is_symbol(self, g: int) -> bool:
        return g >= self.sym0

    def symbol(self, g: int) -> Symbol:
        return self.symbols[g - self.sym0]

    def symbol_index(self, name: str) -> int | None:
        for k, s in enumerate(self.symbols):
            if s.name == name:
                return self.sym0 + k
        return None

    def letter_abel(self, g: int) -> tuple[int, ...]:
        if g < self.m:
            return self.P.abel[g]
        c = g - self.m
        return tuple(1 if k == c else 0 for k in range(self.s))

    def letter_level(self, g: int) -> int | None:
        if g < self.m:
            return self.P.weights[g]
        if g < self.sym0:
            return self.P.color_weights[g - self.m]
        return self.symbol(g).level

    def with_symbol(self, sym: Symbol) -> "Context":
        if sym.name in self.names() or self._alias(sym.name) is not None:
            raise ExprError(f"name {sym.name!r} is already in use")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", sym.name):
            raise ExprError(f"bad symbol name {sym.name!r}")
        return replace(self, symbols=self.symbols + (sym,))

    def with_rules(self, rules) -> "Context":
        return replace(self, rewrite=self.rewrite.extend(rules))

    def fresh_name(self, stem: str = "_p") -> str:
        taken = set(self.names())
        k = 1
        while f"{stem}{k}" in taken:
            k += 1
        return f"{stem}{k}"

    def _alias(self, name: str) -> int | None:
        """Uppercase-leading shorthand for a generator inverse (A1 = a1^-1)."""
        if name and name[0].isupper():
            low = name[0].lower() + name[1:]
            if low in self.P.names:
                return self.P.names.index(low)
        return None

    # formatting -----------------------------------------------------------
    def fmt(self, e: RingElement) -> str:
        return e.format(self.names())

    def fmt_word(self, w: Word) -> str:
        return w.format(self.names())

    # levels and expansion ---------------------------------------------------
    def word_level(self, w: Word) -> int | None:
        total = 0
        for g, s in w:
            lv = self.letter_level(g)
            if lv is None:
                return None
            total += s * lv
        return total

    def expand(self, e: RingElement, only_unleveled: bool = False) -> RingElement:
        """Replace positive symbol letters by their definitions."""
        out = RingElement()
        for w, c in e.terms.items():
            out = out + self._expand_word(w, only_unleveled) * c
        return self.reduce(out)

    def _expand_word(self, w: Word, only_unleveled: bool) -> RingElement:
        acc = RingElement.scalar(1)
        run: list = []
        for g, s in w:
            if s > 0 and self.is_symbol(g) and (not only_unleveled or self.symbol(g).level is None):
                if run:
                    acc = acc * RingElement.from_word(Word(run))
                    run = []
                acc = acc * self.expand(self.symbol(g).definition, only_unleveled)
            else:
                run.append((g, s))
        if run:
            acc = acc * RingElement.from_word(Word(run))
        return acc

    def has_inverse_symbol(self, e: RingElement) -> bool:
        return any(s < 0 and self.is_symbol(g) for w in e.terms for g, s in w)

    def level_components(self, e: RingElement) -> dict[int, RingElement]:
        """Split by psi-level; symbols without a level are expanded first."""
        e = self.expand(e, only_unleveled=True)
        parts: dict[int, dict[Word, Number]] = {}
        for w, c in e.terms.items():
            lv = self.word_level(w)
            parts.setdefault(lv, {})[w] = c
        return {lv: RingElement(t) for lv, t in parts.items()}

    # normal forms -------------------------------------------------------------
    def reduce(self, e: RingElement) -> RingElement:
        """Session normal form: commutative canonical form at level 0, rewriting otherwise."""
        if self.level == 0:
            return RingElement.from_pairs((self.canonical0(w), c) for w, c in e.terms.items())
        if not self.rewrite.rules:
            return e
        return RingElement.from_pairs((self.rewrite.normalize_word(w), c) for w, c in e.terms.items())

    def canonical0(self, w: Word) -> Word:
        vec = [0] * self.s
        syms: dict[int, int] = {}
        for g, s in w:
            if self.is_symbol(g):
                syms[g] = syms.get(g, 0) + s
            else:
                for k, v in enumerate(self.letter_abel(g)):
                    vec[k] += s * v
        letters = []
        for k, v in enumerate(vec):
            letters += [(self.m + k, 1 if v > 0 else -1)] * abs(v)
        for g in sorted(syms):
            v = syms[g]
            letters += [(g, 1 if v > 0 else -1)] * abs(v)
        return Word._trusted(tuple(letters))

    # exact evaluation at level 0 ------------------------------------------------
    def evaluate0(self, e: RingElement) -> tuple[LaurentPoly, LaurentPoly]:
        """Exact value in Frac(Z[t^±]) as (numerator, denominator)."""
        num = LaurentPoly.zero(self.s)
        den = LaurentPoly.const(self.s, 1)
        for w, c in e.terms.items():
            n, d = self._eval_word(w)
            n = n * c
            if d == den:
                num = num + n
            else:
                num, den = num * d + n * den, den * d
                num, den = _cancel(num, den)
        return num, den

    def _eval_word(self, w: Word) -> tuple[LaurentPoly, LaurentPoly]:
        vec = [0] * self.s
        num = LaurentPoly.const(self.s, 1)
        den = LaurentPoly.const(self.s, 1)
        for g, s in w:
            if self.is_symbol(g):
                a, b = self.evaluate0(self.symbol(g).definition)
                if s < 0:
                    if a.is_zero():
                        raise ExprError(f"symbol {self.symbol(g).name} is zero at level 0")
                    a, b = b, a
                num, den = num * a, den * b
            else:
                for k, v in enumerate(self.letter_abel(g)):
                    vec[k] += s * v
        return _cancel(num * LaurentPoly.monomial(vec), den)

    # parsing ------------------------------------------------------------
    def parse(self, text: str, define_inverse: Callable[[RingElement], int] | None = None) -> RingElement:
        """Parse an expression; ``(expr)^-1`` calls ``define_inverse`` for a symbol index."""
        e = _Parser(self, text, define_inverse).run()
        for w in e.terms:
            for g, s in w:
                if s < 0 and self.is_symbol(g) and not self._symbol_unit(g, define_inverse):
                    raise ExprError(f"inverse of {self.names()[g]} used, but it is not a certified unit")
        return self.reduce(e)

    def _symbol_unit(self, g: int, define_inverse) -> bool:
        k = g - self.sym0
        if k < len(self.symbols):
            return self.symbols[k].unit
        return define_inverse is not None


def _cancel(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, LaurentPoly.const(den.nvars, 1)
    if den.is_monomial():
        (e, c), = den.terms.items()
        return num * LaurentPoly.monomial([-a for a in e], Fraction(1, 1) / c), LaurentPoly.const(den.nvars, 1)
    q = exact_quotient(num, den)
    if q is not None:
        return q, LaurentPoly.const(den.nvars, 1)
    return num, den


_TOKENS = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """expr := term (('+'|'-') term)* ; term := factor+ ; factor := atom ('^' int)?"""

    def __init__(self, ctx: Context, text: str, define_inverse):
        self.ctx = ctx
        self.define_inverse = define_inverse
        self.toks: list[tuple[str, str]] = []
        for num, name, op in _TOKENS.findall(text):
            if num:
                self.toks.append(("num", num))
            elif name:
                self.toks.append(("name", name))
            elif op.strip():
                self.toks.append(("op", op))
        self.pos = 0
        self.text = text
        self.extra: list[Symbol] = []

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise ExprError(f"expected {value or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def run(self) -> RingElement:
        if not self.toks:
            raise ExprError("empty expression")
        e = self.expr()
        if self.peek() is not None:
            raise ExprError(f"unexpected {self.peek()[1]!r} in {self.text!r}")
        return e

    def expr(self) -> RingElement:
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        e = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            sign = 1 if op == "+" else -1
            while self.peek() in (("op", "-"), ("op", "+")):
                if self.take()[1] == "-":
                    sign = -sign
            e = e + self.term() * sign
        return e

    def term(self) -> RingElement:
        e = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                e = e * self.factor()
            elif tok is not None and (tok[0] != "op" or tok[1] == "("):
                e = e * self.factor()
            else:
                return e

    def exponent(self) -> int | None:
        if self.peek() != ("op", "^"):
            return None
        self.take()
        paren = self.peek() == ("op", "(")
        if paren:
            self.take()
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        kind, val = self.take()
        if kind != "num" or "/" in val:
            raise ExprError(f"bad exponent in {self.text!r}")
        if paren:
            self.take(")")
        return -int(val) if neg else int(val)

    def factor(self) -> RingElement:
        kind, val = self.take()
        if kind == "num":
            base = RingElement.scalar(Fraction(val))
        elif kind == "name":
            base = RingElement.from_word(self.letter(val))
        elif val == "(":
            base = self.expr()
            self.take(")")
        elif val == "-":
            return -self.factor()
        else:
            raise ExprError(f"unexpected {val!r} in {self.text!r}")
        k = self.exponent()
        if k is None:
            return base
        if k >= 0:
            return base ** k
        return self.invert(base) ** (-k)

    def letter(self, name: str) -> Word:
        ctx = self.ctx
        names = ctx.names()
        if name in names:
            return Word.generator(names.index(name))
        g = ctx._alias(name)
        if g is not None:
            return Word.generator(g, -1)
        raise ExprError(f"unknown name {name!r}")

    def invert(self, e: RingElement) -> RingElement:
        if len(e.terms) == 1:
            (w, c), = e.terms.items()
            return RingElement.from_word(w.inverse(), Fraction(1) / Fraction(c))
        if e.is_zero():
            raise ExprError("inverse of zero")
        if self.define_inverse is None:
            raise ExprError(f"inline inverse of a sum is not allowed here: {self.text!r}")
        g = self.define_inverse(e)
        return RingElement.from_word(Word.generator(g, -1))
