import json

import pytest

from alexcurves import presentations as pr
from alexcurves.alexander import (
    INFINITE,
    b0_matrix,
    delta0,
    determinant,
    fox_matrix,
    multi_alexander,
    result_record,
    uni_alexander,
)
from alexcurves.laurent import LaurentPoly, associated, divides, parse_poly, specialize_psi
from alexcurves.presentations import WeightedPresentation, product_presentation

CORPUS = ["cuspidal-cubic", "line", "parallel-lines:1", "parallel-lines:2", "parallel-lines:3",
          "ffm1", "trefoil-x-line", "ffm1-x-line", "lines-x-line"]


def cubic_with_lines(k):
    return product_presentation(pr.cuspidal_cubic(), pr.parallel_lines(k))


def test_cubic():
    P = pr.cuspidal_cubic()
    assert multi_alexander(P) == parse_poly("t^2 - t + 1")
    assert associated(uni_alexander(P), parse_poly("t^2 - t + 1"), over_q=True)
    assert delta0(P) == 2


def test_fox_matrix_shape():
    F = fox_matrix(pr.cuspidal_cubic())
    assert len(F.entries) == 2 and len(F.entries[0]) == 1
    B = b0_matrix(pr.cuspidal_cubic())
    assert B.nvars == 1


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_free_groups_are_infinite(k):
    P = pr.parallel_lines(k)
    assert multi_alexander(P).is_zero()
    assert delta0(P) is INFINITE
    assert str(INFINITE) == "infinite"


def test_single_line():
    assert multi_alexander(pr.line()) == LaurentPoly.const(1, 1)
    assert delta0(pr.line()) == 0


def test_transversal_pairs_have_trivial_multi():
    for name in ("trefoil-x-line", "lines-x-line"):
        P = pr.corpus(name)
        assert multi_alexander(P).is_unit()
        assert delta0(P) == 0
        assert associated(uni_alexander(P), parse_poly("t - 1"), over_q=True)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cubic_with_parallel_lines(k):
    multi = multi_alexander(cubic_with_lines(k))
    t1 = LaurentPoly.var(multi.nvars, 0)
    assert associated(multi, (t1 - LaurentPoly.const(multi.nvars, 1)) ** (k - 1))
    assert delta0(cubic_with_lines(k)) == k - 1


def test_ffm1_and_union():
    assert delta0(pr.ffm1()) is INFINITE
    U = pr.corpus("ffm1-x-line")
    multi = multi_alexander(U)
    assert associated(multi, parse_poly("t1 - 1", nvars=3))
    assert delta0(U) == 1


def test_too_few_relators_gives_zero():
    P = pr.parallel_lines(2)
    assert P.l < P.m - 1
    assert multi_alexander(P).is_zero()


def test_determinant_small():
    t = LaurentPoly.var(1, 0)
    one = LaurentPoly.const(1, 1)
    M = [[t, one], [one, t]]
    assert determinant(M, 1) == t * t - one


def test_uni_needs_nonzero_weights():
    P = WeightedPresentation.from_colors(["a"], [], [0], [1])
    with pytest.raises(ValueError):
        uni_alexander(P)


def test_result_record_is_json():
    rec = result_record(pr.corpus("ffm1"))
    assert rec["delta0"] == "infinite"
    json.dumps(rec)


@pytest.mark.parametrize("name", CORPUS)
def test_multi_divides_uni(name):
    P = pr.corpus(name)
    multi, uni = multi_alexander(P), uni_alexander(P)
    assert divides(specialize_psi(multi, P.color_weights), uni)
    if P.s == 1:
        assert associated(specialize_psi(multi, P.color_weights), uni, over_q=True)
