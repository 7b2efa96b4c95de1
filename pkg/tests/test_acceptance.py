"""End-to-end acceptance checks with pinned runtime limits."""

import itertools
import time
from contextlib import contextmanager

import pytest
from hypothesis import given, settings

from alexcurves import presentations as pr
from alexcurves.alexander import INFINITE, delta0, multi_alexander, uni_alexander
from alexcurves.laurent import (
    LaurentPoly,
    associated,
    divides,
    exact_quotient,
    parse_poly,
    poly_gcd,
    poly_normalize,
    specialize_psi,
)
from alexcurves.pencil import parse_affine, pencil_check
from alexcurves.skew import FFM1_FACTS, FFM1_SCRIPT, auto_reduce, parse_facts, replay_ledger, run_script
from alexcurves.skew.fixtures import FIRST_ROWSCALE
from alexcurves.unions import (
    ComponentMeta,
    Delta0Class,
    Finiteness,
    MetaError,
    MultiKind,
    PencilType,
    Value,
    predict_union,
)
from alexcurves.words import ONE, RingElement, Word, fox_derivative
from strategies import NGENS, laurent, nonzero_laurent, words


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


# 1 ---------------------------------------------------------------------------------

@pytest.mark.criterion(1, "delta_0 of the cuspidal cubic is 2")
def test_cubic_delta0():
    with within(1):
        assert delta0(pr.cuspidal_cubic()) == 2


# 2 ---------------------------------------------------------------------------------

@pytest.mark.criterion(2, "free groups: multi = 0, delta_0 infinite, parallel lines form a pencil")
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_free_groups_and_pencil(k):
    with within(1):
        P = pr.parallel_lines(k)
        assert multi_alexander(P).is_zero()
        assert delta0(P) is INFINITE
        lines = [parse_affine("x")] + [parse_affine(f"x - {i}") for i in range(1, k)]
        assert pencil_check(lines).is_pencil


# 3 ---------------------------------------------------------------------------------

@pytest.mark.criterion(3, "cubic with k parallel lines: delta_0 = k-1, multi divides (t-1)^(k-1)")
@pytest.mark.parametrize("k", [2, 3, 4])
def test_cubic_with_lines(k):
    with within(10):
        U = pr.product_presentation(pr.cuspidal_cubic(), pr.parallel_lines(k))
        multi = multi_alexander(U)
        assert delta0(U) == k - 1
        n = multi.nvars
        bound = (LaurentPoly.var(n, 0) - LaurentPoly.const(n, 1)) ** (k - 1)
        assert divides(multi, bound)
        # support only in the cubic's meridian variable
        assert all(not any(e[1:]) for e in multi.terms)


# 4 ---------------------------------------------------------------------------------

@pytest.mark.criterion(4, "f(f-1) example: pencil, delta_0 infinite, union with a line has multi t-1")
def test_ffm1_example():
    with within(10):
        v = pencil_check([parse_affine("y^2 - x^3"), parse_affine("y^2 - x^3 - 1")])
        assert v.is_pencil
        assert delta0(pr.ffm1()) is INFINITE
        U = pr.product_presentation(pr.line(), pr.ffm1())
        multi = multi_alexander(U)
        assert associated(multi, parse_poly("t1 - 1", nvars=3))
        assert delta0(U) == 1


# 5 ---------------------------------------------------------------------------------

@pytest.mark.criterion(5, "skew script: delta_n = 0 for n >= 1 with identical replay, rejected at level 0")
def test_skew_script():
    with within(5):
        P = pr.ffm1()
        facts = parse_facts(FFM1_FACTS, P.parse)
        for n in (1, 2, 3):
            res = run_script(P, facts, FFM1_SCRIPT, n)
            assert res.status == "OK" and res.delta == 0
            ok, rebuilt = replay_ledger(res.ledger_json())
            assert ok and rebuilt == res.ledger()
        res0 = run_script(P, facts, FFM1_SCRIPT, 0)
        assert res0.status == "ABORTED"
        assert res0.failed_at == FIRST_ROWSCALE and res0.rejected["op"] == "rowscale"
        assert replay_ledger(res0.ledger_json())[0]


# 6 ---------------------------------------------------------------------------------

D, F, PT = Delta0Class, Finiteness, PencilType


def irr(d0):
    return ComponentMeta(True, d0, PT.NO, 3, 1)


def red(d0, pencil, default=F.UNKNOWN, degree=4):
    return ComponentMeta(False, d0, pencil, degree, 2, higher_default=default)


FINITE_C2 = red(D.FINITE_NONZERO, PT.NO, F.FINITE)
INFINITE_C2 = red(D.INFINITE, PT.YES, F.INFINITE)
UNKNOWN_C2 = red(D.UNKNOWN, PT.UNKNOWN)

# (left, right) -> (level 0 value, level 0 clause, n >= 1 value, n >= 1 clause)
TRUTH_TABLE = [
    (irr(D.FINITE_NONZERO), irr(D.ZERO), Value.ZERO, "same-type", Value.ZERO, "same-type"),
    (FINITE_C2, INFINITE_C2, Value.ZERO, "same-type", Value.ZERO, "same-type"),
    (irr(D.FINITE_NONZERO), FINITE_C2, Value.ZERO, "mixed-nonzero", Value.ZERO, "mixed-nonzero"),
    (irr(D.FINITE_NONZERO), INFINITE_C2, Value.FINITE_NONZERO, "mixed-nonzero", Value.ZERO, "mixed-nonzero"),
    (irr(D.FINITE_NONZERO), UNKNOWN_C2, Value.CONDITIONAL, "mixed-nonzero", Value.ZERO, "mixed-nonzero"),
    (irr(D.ZERO), FINITE_C2, Value.ZERO, "mixed-zero", Value.ZERO, "mixed-zero"),
    (irr(D.ZERO), INFINITE_C2, Value.FINITE_NONZERO, "mixed-zero", Value.FINITE_NONZERO, "mixed-zero"),
    (irr(D.ZERO), UNKNOWN_C2, Value.CONDITIONAL, "mixed-zero", Value.CONDITIONAL, "mixed-zero"),
]


def _finite(flag):
    return {F.FINITE: True, F.INFINITE: False}.get(flag)


def _value(finite):
    return {True: Value.ZERO, False: Value.FINITE_NONZERO, None: Value.CONDITIONAL}[finite]


def oracle(a, b):
    """Expected values at n = 0 and n >= 1, straight from the characterization."""
    if a.irreducible == b.irreducible:
        return Value.ZERO, Value.ZERO
    c1, c2 = (a, b) if a.irreducible else (b, a)
    fin0 = {D.ZERO: True, D.FINITE_NONZERO: True, D.INFINITE: False}.get(c2.delta0_class)
    if fin0 is None:
        fin0 = {PT.NO: True, PT.YES: False}.get(c2.pencil_type)
    finn = _finite(c2.higher_default)
    level0 = _value(fin0)
    if c1.delta0_class is D.FINITE_NONZERO or finn is True:
        return level0, Value.ZERO
    if c1.delta0_class is D.ZERO:
        return level0, _value(finn)
    return level0, Value.CONDITIONAL


def all_metas():
    for irreducible, d0, pencil, default in itertools.product(
            (True, False), list(D), list(PT), list(F)):
        m = ComponentMeta(irreducible, d0, pencil, 4, 1 if irreducible else 2, higher_default=default)
        try:
            m.check()
        except MetaError:
            continue
        yield m


@pytest.mark.criterion(6, "union predictions follow the characterization clause for clause")
def test_truth_table():
    with within(1):
        for left, right, v0, c0, vn, cn in TRUTH_TABLE:
            for a, b in ((left, right), (right, left)):
                rep = predict_union(a, b)
                assert (rep.level0.value, rep.level0.clause) == (v0, c0)
                for n in (1, 2, 7):
                    assert (rep.at(n).value, rep.at(n).clause) == (vn, cn)
                if v0 is Value.ZERO:
                    assert rep.multi.kind is MultiKind.NONZERO_CONSTANT
                elif v0 is Value.FINITE_NONZERO:
                    assert rep.multi.kind is MultiKind.T_MINUS_ONE_POWER
                    assert (rep.multi.k_min, rep.multi.k_max) == (1, right.degree - 1)
        metas = list(all_metas())
        for a, b in itertools.product(metas, metas):
            rep = predict_union(a, b)
            assert (rep.level0.value, rep.higher.value) == oracle(a, b), (a, b)


# 7 ---------------------------------------------------------------------------------

def _gen(g):
    return RingElement.from_word(Word.generator(g))


@pytest.mark.criterion(7, "property suites")
@settings(max_examples=1000, deadline=None)
@given(words(), words())
def test_fox_properties(u, v):
    total = RingElement()
    for g in range(NGENS):
        du = fox_derivative(u, g)
        assert fox_derivative(u * v, g) == du + RingElement.from_word(u) * fox_derivative(v, g)
        total = total + du * (_gen(g) - ONE)
    assert total == RingElement.from_word(u) - ONE


@pytest.mark.criterion(7, "property suites")
@settings(max_examples=1000, deadline=None)
@given(laurent(), nonzero_laurent())
def test_gcd_properties(p, q):
    g = poly_gcd(p, q)
    assert g == poly_gcd(q, p) == poly_normalize(g)
    assert divides(g, p, over_z=True) and divides(g, q, over_z=True)
    n = poly_normalize(q)
    assert poly_normalize(n) == n and exact_quotient(q, n).is_unit()


def _corpus():
    for name in pr.corpus_names():
        if name.endswith(":k"):
            yield from (name.replace(":k", f":{k}") for k in (1, 2, 3, 4, 5))
        else:
            yield name


@pytest.mark.criterion(7, "property suites")
@pytest.mark.parametrize("name", list(_corpus()))
def test_multi_divides_uni_on_corpus(name):
    P = pr.corpus(name)
    multi = specialize_psi(multi_alexander(P), P.color_weights)
    uni = uni_alexander(P)
    assert divides(multi, uni)
    if P.s == 1:
        assert associated(multi, uni, over_q=True)


@pytest.mark.criterion(7, "property suites")
@pytest.mark.parametrize("name", list(_corpus()))
def test_skew_agrees_at_level0(name):
    P = pr.corpus(name)
    res = auto_reduce(P, 0)
    if res.error is not None:
        pytest.skip(f"auto mode did not terminate: {res.error}")
    expected = delta0(P)
    assert (res.delta is INFINITE) if expected is INFINITE else res.delta == expected
