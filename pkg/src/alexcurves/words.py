"""Free-group words, group-ring elements and Fox free calculus.

Generators are plain integer indices.  Names only matter for parsing and
printing, and are passed in explicitly where needed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Number = Union[int, Fraction]
Letter = tuple[int, int]


class WordError(ValueError):
    pass


def _clean(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Word:
    """A freely reduced word; letters are ``(generator, ±1)`` pairs."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters: tuple[Letter, ...] = _free_reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = hash(letters)
        return w

    @classmethod
    def generator(cls, g: int, sign: int = 1) -> "Word":
        return cls._trusted(((g, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        a, b = list(self.letters), other.letters
        k = 0
        while a and k < len(b) and a[-1][0] == b[k][0] and a[-1][1] == -b[k][1]:
            a.pop()
            k += 1
        return Word._trusted(tuple(a) + b[k:])

    def inverse(self) -> "Word":
        return Word._trusted(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def exponent_sum(self, g: int) -> int:
        return sum(s for h, s in self.letters if h == g)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts: list[str] = []
        runs: list[list[int]] = []
        for g, s in self.letters:
            if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (s > 0):
                runs[-1][1] += s
            else:
                runs.append([g, s])
        for g, k in runs:
            parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1):
            raise WordError(f"letter sign must be ±1, got {s}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def word_reduce(letters: Iterable[Letter], alphabet_size: int | None = None) -> Word:
    """Freely reduce a raw letter sequence.

    Raises ``WordError`` for a generator index outside ``range(alphabet_size)``.
    """
    letters = list(letters)
    if alphabet_size is not None:
        for g, _ in letters:
            if not 0 <= g < alphabet_size:
                raise WordError(f"unknown generator index {g}")
    return Word(letters)


IDENTITY = Word()


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse the word syntax.

    Single-letter alphabets accept compact strings such as ``"abAB"``
    (uppercase is the inverse).  Otherwise tokens are separated by whitespace
    or ``*`` and look like ``name``, ``name^-1``, ``name^3``; a token whose first
    letter is the uppercase of a declared name's first letter (``A1`` for
    ``a1``) is that generator's inverse.
    """
    index = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    compact = all(len(n) == 1 for n in names) and re.fullmatch(r"[A-Za-z]+", text)
    if compact:
        tokens = list(text)
    else:
        tokens = [t for t in re.split(r"[\s*]+", text) if t]
    letters: list[Letter] = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad word token {tok!r}")
        name, power = m.group(1), int(m.group(2)) if m.group(2) else 1
        if name in index:
            g = index[name]
        else:
            alt = name[0].lower() + name[1:]
            if name[0].isupper() and alt in index:
                g, power = index[alt], -power
            else:
                raise WordError(f"unknown generator {name!r}")
        letters.extend([(g, 1 if power > 0 else -1)] * abs(power))
    return Word(letters)


class RingElement:
    """Finite integer (or rational) combination of words: an element of ZF."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Number] | None = None):
        clean: dict[Word, Number] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = _clean(c)
        self.terms = clean

    @classmethod
    def from_word(cls, w: Word, c: Number = 1) -> "RingElement":
        return cls({w: c})

    @classmethod
    def scalar(cls, c: Number) -> "RingElement":
        return cls({IDENTITY: c})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Word, Number]]) -> "RingElement":
        acc: dict[Word, Number] = {}
        for w, c in pairs:
            acc[w] = acc.get(w, 0) + c
        return cls(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RingElement.scalar(other)
        return isinstance(other, RingElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return RingElement(acc)

    def __neg__(self) -> "RingElement":
        return RingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: Union["RingElement", Number]) -> "RingElement":
        if not isinstance(other, RingElement):
            return RingElement({w: c * other for w, c in self.terms.items()})
        acc: dict[Word, Number] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return RingElement(acc)

    def __rmul__(self, other: Number) -> "RingElement":
        return self * other

    def __pow__(self, n: int) -> "RingElement":
        out = RingElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def sorted_terms(self) -> list[tuple[Word, Number]]:
        return sorted(self.terms.items(), key=lambda wc: wc[0])

    def support(self) -> list[Word]:
        return [w for w, _ in self.sorted_terms()]

    def map_words(self, f) -> "RingElement":
        """Apply a word-level map ``f: Word -> Word`` linearly."""
        return RingElement.from_pairs((f(w), c) for w, c in self.terms.items())

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for w, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not w:
                body = str(mag)
            elif mag == 1:
                body = w.format(names)
            else:
                body = f"{mag}*{w.format(names)}"
            parts.append(f"{sign} {body}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"RingElement({self.sorted_terms()!r})"


ONE = RingElement.scalar(1)
ZERO = RingElement()


def fox_derivative(w: Word, g: int) -> RingElement:
    """Left Fox derivative d(w)/d(g): d(uv) = du + u dv."""
    acc: dict[Word, Number] = {}
    prefix = IDENTITY
    for h, s in w.letters:
        letter = Word.generator(h, s)
        if h == g:
            if s > 0:
                acc[prefix] = acc.get(prefix, 0) + 1
            else:
                key = prefix * letter
                acc[key] = acc.get(key, 0) - 1
        prefix = prefix * letter
    return RingElement(acc)


def involute(e: RingElement) -> RingElement:
    """Z-linear anti-automorphism sending each word to its inverse."""
    return e.map_words(Word.inverse)


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()
