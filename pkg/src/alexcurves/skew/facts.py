"""Declared group facts and the rewriting system they induce.

Facts are axioms of a session: the engine never tries to decide equality in
the solvable quotient, it only applies rewrites licensed by facts and by the
relators of the presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from ..words import Word


class FactKind(str, Enum):
    GENERATOR_EQUALITY = "equal"
    COMMUTATION = "commute"
    LEVEL = "level"
    NONTRIVIAL = "nontrivial"


class FactError(ValueError):
    pass


@dataclass(frozen=True)
class Fact:
    kind: FactKind
    left: Word | None = None
    right: Word | None = None
    level: int = 0
    source: str = ""

    def active(self, n: int) -> bool:
        return self.kind is not FactKind.NONTRIVIAL or n >= self.level


Rule = tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]


def commutation_rules(x: Word, y: Word) -> list[Rule]:
    """Rules moving x (and x^-1) to the left of y and y^-1."""
    out = []
    for a in (x, x.inverse()):
        for b in (y, y.inverse()):
            lhs, rhs = (b * a).letters, (a * b).letters
            if lhs != rhs and lhs:
                out.append((lhs, rhs))
    return out


def relator_rules(relators: Sequence[Word]) -> list[Rule]:
    """Every cyclic rotation of every relator (and its inverse) rewrites to 1."""
    seen: set = set()
    out: list[Rule] = []
    for r in relators:
        for w in (r, r.inverse()):
            L = w.letters
            for k in range(len(L)):
                rot = Word(L[k:] + L[:k]).letters
                if rot and rot not in seen:
                    seen.add(rot)
                    out.append((rot, ()))
    return out


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple[Rule, ...] = ()
    limit: int = 2000

    def extend(self, more: Sequence[Rule]) -> "RewriteSystem":
        have = set(self.rules)
        new = tuple(r for r in more if r not in have)
        return RewriteSystem(self.rules + new, self.limit)

    def normalize_word(self, w: Word) -> Word:
        letters = w.letters
        for _ in range(self.limit):
            hit = self._step(letters)
            if hit is None:
                return Word._trusted(letters)
            letters = hit
        return Word._trusted(letters)

    def _step(self, letters):
        n = len(letters)
        for i in range(n):
            for lhs, rhs in self.rules:
                k = len(lhs)
                if i + k <= n and letters[i:i + k] == lhs:
                    return Word(letters[:i] + rhs + letters[i + k:]).letters
        return None


@dataclass(frozen=True)
class FactSet:
    facts: tuple[Fact, ...] = ()

    @property
    def declared_level(self) -> int | None:
        lv = [f.level for f in self.facts if f.kind is FactKind.LEVEL]
        return lv[-1] if lv else None

    def of(self, kind: FactKind) -> list[Fact]:
        return [f for f in self.facts if f.kind is kind]

    def add(self, fact: Fact) -> "FactSet":
        return FactSet(self.facts + (fact,))

    def rules(self, relators: Sequence[Word] = ()) -> list[Rule]:
        out = list(relator_rules(relators))
        for f in self.facts:
            if f.kind is FactKind.COMMUTATION:
                out += commutation_rules(f.left, f.right)
            elif f.kind is FactKind.GENERATOR_EQUALITY and f.left != f.right:
                out.append((f.left.letters, f.right.letters))
        return out

    def nontrivial(self, level: int) -> list[Word]:
        return [f.left for f in self.of(FactKind.NONTRIVIAL) if f.active(level)]


def parse_facts(text: str, parse_word) -> FactSet:
    """Facts file: one fact per line, optional ``| source`` suffix.

    ``level n`` / ``commute W1 W2`` / ``equal W1 = W2`` / ``nontrivial W [from=k]``.
    Words use the presentation's token syntax with ``*`` or spaces between
    letters, so the two words of ``commute`` must each be a single token
    (write ``A1*g*a1``).
    """
    facts: list[Fact] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        body, _, source = line.partition("|")
        toks = body.split()
        key, args = toks[0], toks[1:]
        source = source.strip()
        try:
            if key == "level":
                facts.append(Fact(FactKind.LEVEL, level=int(args[0]), source=source))
            elif key == "commute":
                if len(args) != 2:
                    raise FactError("commute needs exactly two words")
                facts.append(Fact(FactKind.COMMUTATION, parse_word(args[0]), parse_word(args[1]), source=source))
            elif key == "equal":
                lhs, _, rhs = " ".join(args).partition("=")
                facts.append(Fact(FactKind.GENERATOR_EQUALITY, parse_word(lhs), parse_word(rhs), source=source))
            elif key == "nontrivial":
                level = 0
                words = []
                for a in args:
                    if a.startswith("from="):
                        level = int(a[5:])
                    else:
                        words.append(a)
                if len(words) != 1:
                    raise FactError("nontrivial needs exactly one word")
                facts.append(Fact(FactKind.NONTRIVIAL, parse_word(words[0]), level=level, source=source))
            else:
                raise FactError(f"unknown fact kind {key!r}")
        except (ValueError, IndexError) as exc:
            raise FactError(f"line {lineno}: {exc}") from None
    return FactSet(tuple(facts))


def format_fact(f: Fact, names: Sequence[str]) -> str:
    def w(x: Word) -> str:
        return x.format(names)

    if f.kind is FactKind.LEVEL:
        s = f"level {f.level}"
    elif f.kind is FactKind.COMMUTATION:
        s = f"commute {w(f.left)} {w(f.right)}"
    elif f.kind is FactKind.GENERATOR_EQUALITY:
        s = f"equal {w(f.left)} = {w(f.right)}"
    else:
        s = f"nontrivial {w(f.left)} from={f.level}"
    return f"{s} | {f.source}" if f.source else s
