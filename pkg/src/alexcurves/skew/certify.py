"""Sound but incomplete certificates that an element is nonzero or a unit.

At level 0 the quotient group is free abelian, so elements are evaluated
exactly in the fraction field of Z[t^±] and the answers are decisive.

At level n >= 1 an element is first expanded and multiplied by nonzero
factors until no inverse symbol remains (the group ring of a poly
torsion-free-abelian group is a domain, so this preserves nonvanishing).
It is nonzero if its image in Z[H_1] is nonzero, or, failing that, if its
support cannot be split into zero-sum blocks of words that might coincide in
the quotient.  Two words provably differ when their homology classes differ
or when their quotient is conjugate to a nonzero power of a word declared
nontrivial.  A failure to certify proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..laurent import LaurentPoly
from ..words import RingElement, Word
from .algebra import Context

MAX_TERMS = 4000
MAX_BLOCK = 14


@dataclass(frozen=True)
class Certificate:
    kind: str            # "NONZERO" or "UNIT"
    method: str          # "exact", "abelian" or "support"
    evidence: str
    level: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "method": self.method, "evidence": self.evidence}
        if self.kind == "UNIT":
            d["level"] = self.level
        return d


def _psi_level0(ctx: Context, p: LaurentPoly) -> set[int]:
    cw = ctx.P.color_weights
    return {sum(a * w for a, w in zip(e, cw)) for e in p.terms}


def certify_nonzero(ctx: Context, e: RingElement) -> Certificate | None:
    if ctx.level == 0:
        num, den = ctx.evaluate0(e)
        if num.is_zero():
            return None
        return Certificate("NONZERO", "exact", _ratio(num, den))
    f = ctx.expand(e)
    if f.is_zero():
        return None
    cleared = clear_inverses(ctx, f)
    if cleared is None or cleared.is_zero():
        return None
    img = abelian_image(ctx, cleared)
    if not img.is_zero():
        return Certificate("NONZERO", "abelian", img.format())
    witness = support_witness(ctx, cleared)
    if witness is None:
        return None
    return Certificate("NONZERO", "support", witness)


def certify_unit(ctx: Context, e: RingElement) -> Certificate | None:
    if ctx.level == 0:
        num, den = ctx.evaluate0(e)
        if num.is_zero():
            return None
        ln, ld = _psi_level0(ctx, num), _psi_level0(ctx, den)
        if len(ln) != 1 or len(ld) != 1:
            return None
        return Certificate("UNIT", "exact", _ratio(num, den), ln.pop() - ld.pop())
    lv = homogeneous_level(ctx, e)
    if lv is None:
        return None
    nz = certify_nonzero(ctx, e)
    if nz is None:
        return None
    return Certificate("UNIT", nz.method, nz.evidence, lv)


def homogeneous_level(ctx: Context, e: RingElement) -> int | None:
    f = ctx.expand(e)
    levels = {ctx.word_level(w) for w in f.terms}
    if len(levels) != 1 or None in levels:
        return None
    return levels.pop()


def _ratio(num: LaurentPoly, den: LaurentPoly) -> str:
    return num.format() if den == 1 else f"({num.format()})/({den.format()})"


def abelian_image(ctx: Context, e: RingElement) -> LaurentPoly:
    acc: dict[tuple[int, ...], Fraction] = {}
    for w, c in e.terms.items():
        v = [0] * ctx.s
        for g, s in w:
            for k, a in enumerate(ctx.letter_abel(g)):
                v[k] += s * a
        acc[tuple(v)] = acc.get(tuple(v), 0) + c
    return LaurentPoly(ctx.s, acc)


def clear_inverses(ctx: Context, e: RingElement, rounds: int = 8) -> RingElement | None:
    """Multiply by nonzero elements until no inverse symbol letter remains."""
    for side in ("left", "right"):
        f = e
        for _ in range(rounds):
            hit = _first_inverse(ctx, f, side)
            if hit is None:
                return f
            if side == "left":
                f = ctx.expand(RingElement.from_word(hit.inverse()) * f)
            else:
                f = ctx.expand(f * RingElement.from_word(hit.inverse()))
            if len(f.terms) > MAX_TERMS:
                break
    return None


def _first_inverse(ctx: Context, e: RingElement, side: str) -> Word | None:
    for w in e.support():
        L = w.letters
        idx = range(len(L)) if side == "left" else range(len(L) - 1, -1, -1)
        for p in idx:
            g, s = L[p]
            if s < 0 and ctx.is_symbol(g):
                return Word(L[:p + 1]) if side == "left" else Word(L[p:])
    return None


# support-partition argument ---------------------------------------------------

def cyclic_reduce(w: Word) -> Word:
    L = list(w.letters)
    while len(L) >= 2 and L[0][0] == L[-1][0] and L[0][1] == -L[-1][1]:
        L = L[1:-1]
    return Word._trusted(tuple(L))


def is_conjugate_power(q: Word, z: Word) -> bool:
    """q is conjugate to z^k for some k != 0 (both cyclically reduced first)."""
    q, z = cyclic_reduce(q), cyclic_reduce(z)
    if not q or not z or len(q) % len(z):
        return False
    k = len(q) // len(z)
    L = q.letters
    rots = {L[i:] + L[:i] for i in range(len(L))}
    return (z ** k).letters in rots or (z ** -k).letters in rots


def provably_distinct(ctx: Context, w1: Word, w2: Word) -> bool:
    if abelian_image(ctx, RingElement.from_word(w1)) != abelian_image(ctx, RingElement.from_word(w2)):
        return True
    q = ctx.rewrite.normalize_word(w1 * w2.inverse()) if ctx.rewrite.rules else w1 * w2.inverse()
    if not q:
        return False
    return any(is_conjugate_power(q, ctx.rewrite.normalize_word(z)) for z in ctx.facts.nontrivial(ctx.level))


def support_witness(ctx: Context, e: RingElement) -> str | None:
    """Name a homology class whose words admit no zero-sum block partition."""
    classes: dict[tuple[int, ...], list[tuple[Word, Fraction]]] = {}
    for w, c in e.sorted_terms():
        v = tuple(abelian_image(ctx, RingElement.from_word(w)).terms)[0]
        classes.setdefault(v, []).append((w, c))
    for v, items in classes.items():
        if len(items) > MAX_BLOCK:
            continue
        apart = {
            (i, j) for i, j in combinations(range(len(items)), 2)
            if provably_distinct(ctx, items[i][0], items[j][0])
        }
        if not _partitionable(list(range(len(items))), items, apart):
            words = ", ".join(ctx.fmt_word(w) for w, _ in items)
            return f"no zero-sum block partition of {{{words}}}"
    return None


def _partitionable(idx: list[int], items, apart: set[tuple[int, int]]) -> bool:
    if not idx:
        return True
    x, rest = idx[0], idx[1:]
    ok = [j for j in rest if (min(x, j), max(x, j)) not in apart]
    for r in range(0, len(ok) + 1):
        for S in combinations(ok, r):
            if any((a, b) in apart for a, b in combinations(S, 2)):
                continue
            if items[x][1] + sum(items[j][1] for j in S) != 0:
                continue
            left = [j for j in rest if j not in S]
            if _partitionable(left, items, apart):
                return True
    return False
