"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from alexcurves.laurent import LaurentPoly
from alexcurves.words import Word

NGENS = 3


def words(ngens: int = NGENS, max_len: int = 8):
    letter = st.tuples(st.integers(0, ngens - 1), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(Word)


def laurent(nvars: int = 2, max_terms: int = 4, max_exp: int = 3, max_coef: int = 5):
    exps = st.tuples(*[st.integers(-max_exp, max_exp)] * nvars)
    coef = st.integers(-max_coef, max_coef).filter(bool)
    return st.dictionaries(exps, coef, max_size=max_terms).map(lambda d: LaurentPoly(nvars, d))


def nonzero_laurent(nvars: int = 2, **kw):
    return laurent(nvars, **kw).filter(lambda p: not p.is_zero())
