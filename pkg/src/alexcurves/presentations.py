"""Weighted presentations of curve-complement groups.

A presentation carries, for each generator, its linking number (weight) and
its image in H_1 = Z^s.  Meridians map to standard basis vectors; the
auxiliary or derived generators produced by a change of generators map to
arbitrary vectors, which is why the image is stored as a vector rather than a
single color.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product as iproduct
from pathlib import Path
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .words import IDENTITY, Word, WordError, commutator, parse_word


class PresentationError(ValueError):
    pass


class PresentationParseError(PresentationError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ProductInfo:
    """Block sizes of a product presentation (left generators first)."""

    m_left: int
    m_right: int
    s_left: int
    s_right: int
    left_relators: int
    right_relators: int


@dataclass(frozen=True)
class WeightedPresentation:
    names: tuple[str, ...]
    relators: tuple[Word, ...]
    weights: tuple[int, ...]
    abel: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...] | None = None
    derived: bool = False
    product: ProductInfo | None = None
    basis_change: tuple[tuple[int, ...], ...] | None = None
    note: str = ""

    @classmethod
    def from_colors(cls, names: Sequence[str], relators: Sequence[Word | str], weights: Sequence[int],
                    colors: Sequence[int], s: int | None = None, **kw) -> "WeightedPresentation":
        """Build from 1-based colors; color 0 marks an auxiliary generator trivial in H_1."""
        s = max(colors, default=0) if s is None else s
        abel = tuple(tuple(1 if c == k + 1 else 0 for k in range(s)) for c in colors)
        rels = tuple(parse_word(r, names) if isinstance(r, str) else r for r in relators)
        return cls(tuple(names), rels, tuple(weights), abel, **kw)

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def l(self) -> int:
        return len(self.relators)

    @property
    def s(self) -> int:
        return len(self.abel[0]) if self.abel else 0

    @property
    def colors(self) -> tuple[int | None, ...]:
        out = []
        for v in self.abel:
            if not any(v):
                out.append(0)
            elif sorted(v) == [0] * (len(v) - 1) + [1]:
                out.append(v.index(1) + 1)
            else:
                out.append(None)
        return tuple(out)

    @property
    def color_weights(self) -> tuple[int, ...]:
        """Linking number of a meridian of each component (1 when none is present)."""
        out = [1] * self.s
        for c, w in zip(self.colors, self.weights):
            if c:
                out[c - 1] = w
        return tuple(out)

    def abelianize(self, w: Word) -> tuple[int, ...]:
        acc = [0] * self.s
        for g, sgn in w:
            for k, v in enumerate(self.abel[g]):
                acc[k] += sgn * v
        return tuple(acc)

    def psi(self, w: Word) -> int:
        return sum(sgn * self.weights[g] for g, sgn in w)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.names)

    def format_relator(self, r: Word) -> str:
        return " ".join(self.names[g] if s > 0 else _inverse_token(self.names[g]) for g, s in r) or "1"

    def to_text(self) -> str:
        lines = [
            "gens " + " ".join(self.names),
            "weights " + " ".join(map(str, self.weights)),
        ]
        cols = self.colors
        if all(c is not None for c in cols):
            lines.append("colors " + " ".join(map(str, cols)))
            if self.s != max(cols, default=0):
                lines.append(f"components {self.s}")
        else:
            for name, v in zip(self.names, self.abel):
                lines.append(f"abel {name} " + " ".join(map(str, v)))
        if self.degrees:
            lines.append("degrees " + " ".join(map(str, self.degrees)))
        lines += ["rel " + self.format_relator(r) for r in self.relators]
        return "\n".join(lines) + "\n"


def _inverse_token(name: str) -> str:
    return f"{name}^-1"


# validation ------------------------------------------------------------------

def validate(P: WeightedPresentation) -> list[str]:
    """Return the list of violated invariants (empty means valid)."""
    problems: list[str] = []
    if len(set(P.names)) != P.m:
        problems.append("duplicate generator names")
    if len(P.weights) != P.m or len(P.abel) != P.m:
        problems.append("weights/abelianization length does not match generator count")
        return problems
    if len({len(v) for v in P.abel}) > 1:
        problems.append("abelianization vectors have inconsistent lengths")
        return problems
    if P.s < 1 and P.m:
        problems.append("presentation must have at least one component")
        return problems
    for j, r in enumerate(P.relators):
        for g, _ in r:
            if not 0 <= g < P.m:
                problems.append(f"relator {j + 1}: unknown generator index {g}")
                break
        else:
            if any(P.abelianize(r)):
                problems.append(f"relator {j + 1}: relator abelianization nonzero")
            if P.psi(r) != 0:
                problems.append(f"relator {j + 1}: relator psi-weight nonzero")
    cw = P.color_weights
    for i, (v, w) in enumerate(zip(P.abel, P.weights)):
        if sum(a * b for a, b in zip(v, cw)) != w:
            problems.append(f"generator {P.names[i]}: weight {w} is not the linking number of its homology class")
    if not P.derived:
        seen: dict[int, int] = {}
        for c, w in zip(P.colors, P.weights):
            if c:
                if seen.setdefault(c, w) != w:
                    problems.append(f"component {c}: meridian weights are not constant")
    if P.degrees is not None and len(P.degrees) != P.s:
        problems.append("degrees must list one value per component")
    if not problems:
        problems += _homology_check(P)
    return problems


def _homology_check(P: WeightedPresentation) -> list[str]:
    """H_1 must be the free abelian group on the components, via the abel map."""
    if P.m == 0:
        return []
    A = Matrix(P.abel)
    if A.rank() != P.s or _invariant_factors(A) != [1] * P.s:
        return ["abelianization map is not onto Z^s"]
    rels = [[r.exponent_sum(g) for g in range(P.m)] for r in P.relators]
    need = P.m - P.s
    if need == 0:
        return [] if not any(map(any, rels)) else ["relators are not in the kernel of the abelianization"]
    R = Matrix(rels) if rels else Matrix.zeros(0, P.m)
    if R.rows == 0 or R.rank() != need or _invariant_factors(R) != [1] * need:
        return [f"H_1 of the presentation is not Z^{P.s}"]
    return []


def _invariant_factors(M: Matrix) -> list[int]:
    S = smith_normal_form(M, domain=ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def ensure_valid(P: WeightedPresentation) -> WeightedPresentation:
    problems = validate(P)
    if problems:
        raise PresentationError("; ".join(problems))
    return P


# construction --------------------------------------------------------------

def _rename(word: Word, offset: int) -> Word:
    return Word((g + offset, s) for g, s in word)


def product_presentation(left: WeightedPresentation, right: WeightedPresentation) -> WeightedPresentation:
    """Presentation of the direct product: both relator sets plus all [a_i, b_j]."""
    ensure_valid(left)
    ensure_valid(right)
    names = list(left.names)
    taken = set(names)
    for n in right.names:
        new = n
        while new in taken:
            new = new + "_"
        taken.add(new)
        names.append(new)
    m1 = left.m
    rels = list(left.relators) + [_rename(r, m1) for r in right.relators]
    for i in range(left.m):
        for j in range(right.m):
            rels.append(commutator(Word.generator(i), Word.generator(m1 + j)))
    abel = tuple(v + (0,) * right.s for v in left.abel) + tuple((0,) * left.s + v for v in right.abel)
    degrees = None
    if left.degrees is not None and right.degrees is not None:
        degrees = left.degrees + right.degrees
    info = ProductInfo(left.m, right.m, left.s, right.s, left.l, right.l)
    return WeightedPresentation(tuple(names), tuple(rels), left.weights + right.weights, abel,
                                degrees=degrees, derived=left.derived or right.derived, product=info)


SCHEMES = ("mixed", "split")


def change_generators(P: WeightedPresentation, scheme: str) -> WeightedPresentation:
    """Rewrite a product presentation in the generators used for the block reductions.

    ``mixed``: x_1 = a_1, x_i = a_i a_1^-1, y_j = b_j a_1^-1.  The commutators
    and R' are substituted literally; R'' is copied with b_j renamed to y_j
    (valid because x_1 is central modulo the commutators and every relator of
    R'' has exponent sum zero).

    ``split``: x as above, y_1 = b_1, y_j = b_j b_1^-1.  R' and R'' are
    substituted literally and the commutators are replaced by [x_i, y_j],
    which generate the same normal subgroup.
    """
    if P.product is None:
        raise PresentationError("change_generators needs a product presentation")
    if scheme not in SCHEMES:
        raise PresentationError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    info = P.product
    m1, m2 = info.m_left, info.m_right
    m = m1 + m2
    x = [Word.generator(i) for i in range(m1)]
    y = [Word.generator(m1 + j) for j in range(m2)]
    # old generator -> word in the new generators
    image: list[Word] = [x[0]] + [x[i] * x[0] for i in range(1, m1)]
    if scheme == "mixed":
        image += [y[j] * x[0] for j in range(m2)]
    else:
        image += [y[0]] + [y[j] * y[0] for j in range(1, m2)]

    def subst(w: Word) -> Word:
        out = IDENTITY
        for g, s in w:
            out = out * (image[g] if s > 0 else image[g].inverse())
        return out

    left_rels = [subst(r) for r in P.relators[:info.left_relators]]
    right_block = P.relators[info.left_relators:info.left_relators + info.right_relators]
    if scheme == "mixed":
        right_rels = list(right_block)
        comms = [subst(r) for r in P.relators[info.left_relators + info.right_relators:]]
    else:
        right_rels = [subst(r) for r in right_block]
        comms = [commutator(x[i], y[j]) for i in range(m1) for j in range(m2)]

    # new_ab = T . old_ab with T the integer matrix of the generator change
    T = [[0] * m for _ in range(m)]
    T[0][0] = 1
    for i in range(1, m1):
        T[i][i], T[i][0] = 1, -1
    for j in range(m2):
        r = m1 + j
        T[r][r] = 1
        if scheme == "mixed":
            T[r][0] -= 1
        elif j > 0:
            T[r][m1] -= 1
    abel = tuple(tuple(sum(T[r][k] * P.abel[k][c] for k in range(m)) for c in range(P.s)) for r in range(m))
    weights = tuple(sum(T[r][k] * P.weights[k] for k in range(m)) for r in range(m))
    names = tuple([f"x{i + 1}" for i in range(m1)] + [f"y{j + 1}" for j in range(m2)])
    return WeightedPresentation(names, tuple(left_rels + right_rels + comms), weights, abel,
                                degrees=P.degrees, derived=True, product=info,
                                basis_change=tuple(map(tuple, T)), note=f"{scheme} generators")


# file format -----------------------------------------------------------------

def parse_presentation(text: str) -> WeightedPresentation:
    names: list[str] | None = None
    weights: list[int] | None = None
    colors: list[int] | None = None
    abel: dict[str, list[int]] = {}
    degrees: list[int] | None = None
    components: int | None = None
    rel_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        toks = rest.split()
        try:
            if key == "gens":
                if not toks:
                    raise PresentationParseError(lineno, "no generators declared")
                names = toks
            elif key == "weights":
                weights = [int(t) for t in toks]
            elif key == "colors":
                colors = [int(t) for t in toks]
            elif key == "components":
                components = int(toks[0])
            elif key == "degrees":
                degrees = [int(t) for t in toks]
            elif key == "abel":
                abel[toks[0]] = [int(t) for t in toks[1:]]
            elif key == "rel":
                rel_lines.append((lineno, rest))
            else:
                raise PresentationParseError(lineno, f"unknown keyword {key!r}")
        except ValueError as exc:
            if isinstance(exc, PresentationParseError):
                raise
            raise PresentationParseError(lineno, str(exc)) from None
    if names is None:
        raise PresentationParseError(0, "missing 'gens' line")
    relators = []
    for lineno, body in rel_lines:
        try:
            relators.append(parse_word(body, names))
        except WordError as exc:
            raise PresentationParseError(lineno, str(exc)) from None
    if weights is None:
        weights = [1] * len(names)
    if len(weights) != len(names):
        raise PresentationParseError(0, "weights must list one value per generator")
    if abel:
        missing = [n for n in names if n not in abel]
        if missing:
            raise PresentationParseError(0, f"missing abel line for {missing}")
        vecs = tuple(tuple(abel[n]) for n in names)
        return WeightedPresentation(tuple(names), tuple(relators), tuple(weights), vecs,
                                    degrees=tuple(degrees) if degrees else None, derived=True)
    if colors is None:
        raise PresentationParseError(0, "missing 'colors' line")
    if len(colors) != len(names):
        raise PresentationParseError(0, "colors must list one value per generator")
    return WeightedPresentation.from_colors(names, relators, weights, colors, s=components,
                                            degrees=tuple(degrees) if degrees else None)


def load_presentation(path: str | Path) -> WeightedPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


# built-in corpus -------------------------------------------------------------

def cuspidal_cubic() -> WeightedPresentation:
    return WeightedPresentation.from_colors(["a1", "a2"], ["a1 a2 a1 A2 A1 A2"], [1, 1], [1, 1], degrees=(3,))


def parallel_lines(k: int) -> WeightedPresentation:
    """Free group on k meridians: the complement of k parallel lines."""
    if k < 1:
        raise PresentationError("need at least one line")
    names = [f"b{j + 1}" for j in range(k)]
    return WeightedPresentation.from_colors(names, [], [1] * k, list(range(1, k + 1)), degrees=(1,) * k)


def ffm1() -> WeightedPresentation:
    """f(f-1) = 0 with f = y^2 - x^3.

    g is auxiliary: alpha1 and g*alpha1 are meridians of f = 0, so g is
    trivial in homology and has linking number 0.  Conjugation is
    g^a1 = a1^-1 g a1.
    """
    names = ["a1", "a2", "g"]
    rels = [
        "g a2 G A2",                      # [g, a2]
        "A1 g a1 a2 A1 G a1 A2",          # [g^a1, a2]
        "G A1 g a1 a1 g A1",              # g^-1 g^a1 g^(a1^-1)
    ]
    return WeightedPresentation.from_colors(names, rels, [1, 1, 0], [1, 2, 0], degrees=(3, 3),
                                            note="g = (g a1) a1^-1 is a quotient of two meridians of f = 0")


def line() -> WeightedPresentation:
    return parallel_lines(1)


CORPUS_DOC = {
    "cuspidal-cubic": "y^2 = x^3: <a1, a2 | a1 a2 a1 = a2 a1 a2>",
    "parallel-lines:k": "k parallel lines: free group of rank k",
    "line": "a single line: Z",
    "ffm1": "f(f-1) = 0 for the cuspidal cubic f, a curve of affine pencil type",
    "trefoil-x-line": "cuspidal cubic union a transversal line (product presentation)",
    "ffm1-x-line": "f(f-1) union a transversal line (product presentation)",
    "lines-x-line": "two transversal lines: <a, b | [a, b]>",
}


def corpus(name: str) -> WeightedPresentation:
    if name in ("cuspidal-cubic", "trefoil"):
        return cuspidal_cubic()
    if name == "line":
        return line()
    if name.startswith("parallel-lines:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise PresentationError(f"bad line count in {name!r}") from None
        return parallel_lines(k)
    if name == "ffm1":
        return ffm1()
    if name == "trefoil-x-line":
        return product_presentation(cuspidal_cubic(), line())
    if name == "ffm1-x-line":
        return product_presentation(line(), ffm1())
    if name == "lines-x-line":
        return product_presentation(line(), line())
    raise PresentationError(f"unknown corpus entry {name!r}")


def corpus_names() -> list[str]:
    return list(CORPUS_DOC)


def is_corpus_name(name: str) -> bool:
    try:
        corpus(name)
    except PresentationError:
        return False
    return True


def with_note(P: WeightedPresentation, note: str) -> WeightedPresentation:
    return replace(P, note=note)
