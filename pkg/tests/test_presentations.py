import pytest

from alexcurves import presentations as pr
from alexcurves.alexander import delta0, multi_alexander
from alexcurves.laurent import associated
from alexcurves.presentations import (
    PresentationError,
    PresentationParseError,
    WeightedPresentation,
    change_generators,
    parse_presentation,
    product_presentation,
    validate,
)


def all_corpus():
    for name in pr.corpus_names():
        if name.endswith(":k"):
            for k in (1, 2, 4):
                yield name.replace(":k", f":{k}")
        else:
            yield name


@pytest.mark.parametrize("name", list(all_corpus()))
def test_corpus_entries_are_valid(name):
    P = pr.corpus(name)
    assert validate(P) == []
    Q = parse_presentation(P.to_text())
    # notes and product block sizes are not part of the text format
    assert (Q.names, Q.relators, Q.weights, Q.abel, Q.degrees) == (P.names, P.relators, P.weights, P.abel, P.degrees)


def test_unknown_corpus_name():
    assert not pr.is_corpus_name("nope")
    with pytest.raises(PresentationError):
        pr.corpus("nope")


def test_cubic_shape():
    P = pr.cuspidal_cubic()
    assert (P.m, P.l, P.s) == (2, 1, 1)
    assert P.degrees == (3,)


def test_parse_file_format():
    text = """
    # two lines meeting transversally
    gens a b
    weights 1 1
    colors 1 2
    rel a b A B
    """
    P = parse_presentation(text)
    assert P.names == ("a", "b") and P.s == 2
    assert P.format_relator(P.relators[0]) == "a b a^-1 b^-1"


def test_parse_error_carries_line():
    with pytest.raises(PresentationParseError) as info:
        parse_presentation("gens a b\nweights 1 1\ncolors 1 1\nrel a c\n")
    assert info.value.line == 4


def test_validate_catches_bad_weight():
    # g is trivial in homology, so its weight must be 0
    P = WeightedPresentation.from_colors(["a", "g"], [], [1, 1], [1, 0])
    assert any("linking number" in p for p in validate(P))


def test_validate_catches_nonconstant_meridian_weights():
    P = WeightedPresentation.from_colors(["a", "b"], ["a B"], [1, 2], [1, 1])
    assert any("not constant" in p for p in validate(P))


def test_validate_catches_nonzero_relator():
    P = WeightedPresentation.from_colors(["a", "b"], ["a b"], [1, 1], [1, 1])
    problems = validate(P)
    assert any("abelianization nonzero" in p for p in problems)


def test_validate_catches_wrong_homology():
    # <a, b | [a,b]> with both meridians in one component has H_1 = Z^2, not Z
    P = WeightedPresentation.from_colors(["a", "b"], ["a b A B"], [1, 1], [1, 1])
    assert validate(P)


def test_product_shape_and_names():
    U = product_presentation(pr.cuspidal_cubic(), pr.line())
    assert U.m == 3 and U.s == 2
    assert U.l == 1 + 0 + 2
    V = product_presentation(pr.line(), pr.line())
    assert len(set(V.names)) == 2


@pytest.mark.parametrize("scheme", ["mixed", "split"])
def test_change_generators_preserves_invariants(scheme):
    U = product_presentation(pr.cuspidal_cubic(), pr.parallel_lines(2))
    V = change_generators(U, scheme)
    assert validate(V) == []
    assert V.names[:2] == ("x1", "x2") and V.names[2] == "y1"
    assert associated(multi_alexander(V), multi_alexander(U))
    assert delta0(V) == delta0(U) == 1


def test_change_generators_needs_product():
    with pytest.raises(PresentationError):
        change_generators(pr.cuspidal_cubic(), "mixed")
    U = product_presentation(pr.line(), pr.line())
    with pytest.raises(PresentationError):
        change_generators(U, "diagonal")
