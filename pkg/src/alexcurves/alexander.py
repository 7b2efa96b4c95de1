"""The commutative engine: Fox matrices, B(0), Alexander polynomials and delta_0."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .laurent import (
    LaurentPoly,
    content_stripped,
    degree_spread,
    divides,
    poly_gcd,
    poly_normalize,
)
from .presentations import WeightedPresentation, ensure_valid
from .words import RingElement, Word, fox_derivative, involute


class _Infinite:
    """Sentinel for an infinite delta (compares above every integer)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "infinite"

    def __gt__(self, other) -> bool:
        return other is not self

    def __lt__(self, other) -> bool:
        return False

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
Delta = int | _Infinite


@dataclass(frozen=True)
class FoxMatrix:
    """Rows are generators, columns relators; entry = involute(d r_j / d a_i)."""

    entries: tuple[tuple[RingElement, ...], ...]
    m: int
    l: int

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[RingElement]:
        return [row[j] for row in self.entries]


@dataclass(frozen=True)
class AbelianMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    m: int
    l: int
    nvars: int

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def map(self, f: Callable[[LaurentPoly], LaurentPoly], nvars: int) -> "AbelianMatrix":
        return AbelianMatrix(tuple(tuple(f(e) for e in row) for row in self.entries), self.m, self.l, nvars)


def fox_matrix(P: WeightedPresentation) -> FoxMatrix:
    rows = tuple(
        tuple(involute(fox_derivative(r, i)) for r in P.relators)
        for i in range(P.m)
    )
    return FoxMatrix(rows, P.m, P.l)


def word_image(w: Word, images: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(images[0]) if images else 0
    acc = [0] * n
    for g, s in w:
        for k, v in enumerate(images[g]):
            acc[k] += s * v
    return tuple(acc)


def abelianize_element(e: RingElement, images: Sequence[Sequence[int]], nvars: int) -> LaurentPoly:
    acc: dict[tuple[int, ...], int] = {}
    for w, c in e.terms.items():
        key = word_image(w, images) if nvars else ()
        acc[key] = acc.get(key, 0) + c
    return LaurentPoly(nvars, acc)


def _matrix_image(P: WeightedPresentation, images, nvars: int) -> AbelianMatrix:
    F = fox_matrix(P)
    rows = tuple(tuple(abelianize_element(e, images, nvars) for e in row) for row in F.entries)
    return AbelianMatrix(rows, P.m, P.l, nvars)


def b0_matrix(P: WeightedPresentation) -> AbelianMatrix:
    return _matrix_image(P, P.abel, P.s)


def psi_matrix(P: WeightedPresentation) -> AbelianMatrix:
    """Specialization of the Fox matrix along the linking-number map."""
    return _matrix_image(P, [[w] for w in P.weights], 1)


# determinants --------------------------------------------------------------

def determinant(M: Sequence[Sequence[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Division-free Laplace expansion, memoized over column subsets."""
    n = len(M)
    if n == 0:
        return LaurentPoly.const(nvars, 1)
    memo: dict[tuple[int, ...], LaurentPoly] = {}

    def sub(row: int, cols: tuple[int, ...]) -> LaurentPoly:
        if row == n:
            return LaurentPoly.const(nvars, 1)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = LaurentPoly.zero(nvars)
        for k, c in enumerate(cols):
            a = M[row][c]
            if a.is_zero():
                continue
            rest = sub(row + 1, cols[:k] + cols[k + 1:])
            if rest.is_zero():
                continue
            term = a * rest
            acc = acc - term if k % 2 else acc + term
        memo[cols] = acc
        return acc

    return sub(0, tuple(range(n)))


def minors(A: AbelianMatrix, k: int):
    """Yield (rows, cols, det) over all k x k minors."""
    for rows in combinations(range(A.m), k):
        for cols in combinations(range(A.l), k):
            sub = [[A.entries[r][c] for c in cols] for r in rows]
            yield rows, cols, determinant(sub, A.nvars)


def _minor_gcd(A: AbelianMatrix, over_q: bool) -> LaurentPoly:
    k = A.m - 1
    if k < 0:
        raise ValueError("a presentation needs at least one generator")
    g = LaurentPoly.zero(A.nvars)
    if k > A.l:
        return g
    for _, _, d in minors(A, k):
        if d.is_zero():
            continue
        if g.is_zero():
            g = poly_normalize(d)
        elif not divides(g, d, over_z=not over_q):
            g = poly_gcd(g, d)
        if g.is_constant() and (over_q or g == 1):
            break
    if over_q:
        return content_stripped(g)
    return poly_normalize(g)


def multi_alexander(P: WeightedPresentation) -> LaurentPoly:
    """Canonical Z-gcd of the codimension-one minors of B(0) (0 if none survive)."""
    ensure_valid(P)
    return _minor_gcd(b0_matrix(P), over_q=False)


def multi_alexander_primitive(P: WeightedPresentation) -> LaurentPoly:
    """Same ideal generator read in Q[t^±]: integer content removed."""
    return content_stripped(multi_alexander(P))


def uni_alexander(P: WeightedPresentation) -> LaurentPoly:
    ensure_valid(P)
    if not any(P.weights):
        raise ValueError("linking-number map is identically zero")
    return _minor_gcd(psi_matrix(P), over_q=True)


def delta_from_multi(multi: LaurentPoly) -> Delta:
    if multi.is_zero():
        return INFINITE
    return degree_spread(multi, (1,) * multi.nvars)


def delta0(P: WeightedPresentation) -> Delta:
    return delta_from_multi(multi_alexander(P))


def format_delta(d: Delta) -> int | str:
    return "infinite" if d is INFINITE else d


def result_record(P: WeightedPresentation) -> dict:
    multi = multi_alexander(P)
    try:
        uni = uni_alexander(P).format()
    except ValueError:
        uni = None
    return {
        "m": P.m,
        "l": P.l,
        "s": P.s,
        "multi": multi.format(),
        "uni": uni,
        "delta0": format_delta(delta_from_multi(multi)),
    }


def result_json(P: WeightedPresentation) -> str:
    return json.dumps(result_record(P), sort_keys=True)
