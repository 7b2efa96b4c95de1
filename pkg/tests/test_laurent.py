from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from alexcurves.laurent import (
    LaurentPoly,
    associated,
    content_stripped,
    degree_spread,
    divides,
    exact_quotient,
    parse_poly,
    poly_gcd,
    poly_gcd_list,
    poly_normalize,
    specialize_psi,
)
from strategies import laurent, nonzero_laurent

t = LaurentPoly.var(1, 0)
one = LaurentPoly.const(1, 1)


def test_normalize_strips_monomials_and_sign():
    p = -(t ** -3) * (t * t - one)
    assert poly_normalize(p) == t * t - one


def test_known_gcd():
    assert poly_gcd(t * t - one, t * t - t * 2 + one) == t - one
    assert poly_gcd(t * 4 - one * 4, t * 6 - one * 6) == (t - one) * 2


def test_gcd_with_zero():
    p = t ** -2 * (one - t)
    assert poly_gcd(p, LaurentPoly.zero(1)) == poly_normalize(p)
    assert poly_gcd_list([], 1).is_zero()


def test_content_stripped():
    p = parse_poly("1/2*t - 1/2")
    assert content_stripped(p) == t - one
    assert associated(p, t - one, over_q=True)
    assert not associated(p, t - one)


def test_exact_division():
    assert exact_quotient(t ** 3 - one, t - one) == t * t + t + one
    assert exact_quotient(t * t + one, t - one) is None
    assert divides(t - one, (t - one) ** 3)
    assert not divides(one * 2, t - one, over_z=True)
    with pytest.raises(ZeroDivisionError):
        exact_quotient(t, LaurentPoly.zero(1))


def test_degree_spread_and_specialize():
    p = parse_poly("t1^2*t2 - t2^-1 + 3")
    assert degree_spread(p, (1, 1)) == 4
    assert specialize_psi(p, (1, 1)) == parse_poly("t^3 - t^-1 + 3")
    with pytest.raises(ValueError):
        degree_spread(LaurentPoly.zero(2), (1, 1))


def test_parse_format_roundtrip():
    p = parse_poly("t1^2*t2^-1 - 3*t1 + 1/2")
    assert parse_poly(p.format()) == p
    assert p.terms[(1, 0)] == -3 and p.terms[(0, 0)] == Fraction(1, 2)


@settings(max_examples=1000, deadline=None)
@given(laurent(), laurent())
def test_gcd_laws(p, q):
    g = poly_gcd(p, q)
    assert g == poly_gcd(q, p)
    assert poly_normalize(g) == g
    if g.is_zero():
        assert p.is_zero() and q.is_zero()
        return
    assert divides(g, p, over_z=True) and divides(g, q, over_z=True)


@settings(max_examples=1000, deadline=None)
@given(nonzero_laurent())
def test_normalize_laws(p):
    n = poly_normalize(p)
    assert poly_normalize(n) == n
    q = exact_quotient(p, n)
    assert q is not None and q.is_unit()
    assert min(e[0] for e in n.terms) == 0 and min(e[1] for e in n.terms) == 0


@settings(max_examples=200, deadline=None)
@given(nonzero_laurent(max_terms=3), nonzero_laurent(max_terms=3), nonzero_laurent(max_terms=2))
def test_gcd_is_multiplicative_in_common_factor(p, q, r):
    assume(poly_gcd(p, q).is_unit())
    assert associated(poly_gcd(p * r, q * r), r)
