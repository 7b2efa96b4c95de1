import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexcurves import presentations as pr
from alexcurves.unions import (
    ComponentMeta,
    Delta0Class,
    Finiteness,
    MetaError,
    MultiKind,
    PencilType,
    Value,
    classify_multi,
    crosscheck,
    meta_from_presentation,
    predict_union,
)

D = Delta0Class
F = Finiteness


def irr(d0=D.FINITE_NONZERO, degree=3):
    return ComponentMeta(True, d0, PencilType.NO, degree, 1)


def red(d0=D.UNKNOWN, pencil=PencilType.UNKNOWN, degree=4, s=2, **kw):
    return ComponentMeta(False, d0, pencil, degree, s, **kw)


def test_meta_invariants():
    with pytest.raises(MetaError):
        ComponentMeta(True, D.INFINITE, s=1).check()
    with pytest.raises(MetaError):
        red(D.FINITE_NONZERO, PencilType.YES).check()
    with pytest.raises(MetaError):
        red(D.INFINITE, PencilType.NO).check()
    with pytest.raises(MetaError):
        ComponentMeta(True, s=2).check()
    with pytest.raises(MetaError):
        red(higher={0: F.FINITE}).check()


def test_both_irreducible_and_both_reducible():
    for a, b in ((irr(), irr(D.ZERO)), (red(D.INFINITE), red(D.ZERO))):
        rep = predict_union(a, b)
        assert rep.level0.value is Value.ZERO and rep.at(5).value is Value.ZERO
        assert rep.level0.clause == "same-type"
        assert rep.multi.kind is MultiKind.NONZERO_CONSTANT


def test_cubic_with_lines_prediction():
    rep = predict_union(irr(), red(D.INFINITE, PencilType.YES, degree=3, s=3))
    assert rep.level0.value is Value.FINITE_NONZERO
    assert rep.at(1).value is Value.ZERO
    assert rep.multi.kind is MultiKind.T_MINUS_ONE_POWER
    assert (rep.multi.k_min, rep.multi.k_max) == (1, 2)


def test_swapping_sides():
    a, b = irr(), red(D.ZERO, PencilType.NO)
    assert predict_union(b, a).swapped and not predict_union(a, b).swapped
    assert predict_union(b, a).level0 == predict_union(a, b).level0


def test_unknown_propagates_to_conditional():
    rep = predict_union(irr(), red())
    assert rep.level0.value is Value.CONDITIONAL
    assert rep.multi.kind is MultiKind.CONDITIONAL
    rep = predict_union(irr(D.ZERO), red(D.ZERO, PencilType.NO))
    assert rep.at(2).value is Value.CONDITIONAL


def test_higher_flags():
    b = red(D.ZERO, PencilType.NO, higher={1: F.FINITE, 2: F.INFINITE})
    rep = predict_union(irr(D.ZERO), b)
    assert rep.at(1).value is Value.ZERO
    assert rep.at(2).value is Value.FINITE_NONZERO
    assert rep.at(3).value is Value.CONDITIONAL
    # a nonzero left delta_0 kills every higher level regardless of flags
    assert predict_union(irr(), b).at(2).value is Value.ZERO


metas = st.builds(
    ComponentMeta,
    irreducible=st.booleans(),
    delta0_class=st.sampled_from(list(D)),
    pencil_type=st.sampled_from(list(PencilType)),
    degree=st.integers(1, 6),
    s=st.integers(1, 3),
    higher=st.dictionaries(st.integers(1, 3), st.sampled_from(list(F)), max_size=3),
    higher_default=st.sampled_from(list(F)),
)


def consistent(m):
    try:
        m.check()
    except MetaError:
        return False
    return True


@settings(max_examples=300, deadline=None)
@given(metas.filter(consistent), metas.filter(consistent))
def test_symmetric_and_never_infinite(a, b):
    p, q = predict_union(a, b), predict_union(b, a)
    for n in range(4):
        assert p.at(n) == q.at(n)
        assert p.at(n).value.value != "INFINITE"
        assert p.at(n).clause
    assert p.multi == q.multi == classify_multi(a, b)


def test_meta_from_presentation():
    m = meta_from_presentation(pr.cuspidal_cubic())
    assert m.irreducible and m.delta0_class is D.FINITE_NONZERO and m.degree == 3
    assert meta_from_presentation(pr.parallel_lines(3)).delta0_class is D.INFINITE


@pytest.mark.parametrize("left,right", [
    ("cuspidal-cubic", "parallel-lines:2"),
    ("cuspidal-cubic", "parallel-lines:4"),
    ("line", "line"),
    ("cuspidal-cubic", "line"),
    ("ffm1", "line"),
])
def test_crosscheck_corpus(left, right):
    P1, P2 = pr.corpus(left), pr.corpus(right)
    rep = crosscheck(P1, P2, meta_from_presentation(P1), meta_from_presentation(P2))
    assert rep.ok, rep.to_json()
    assert not rep.failures
