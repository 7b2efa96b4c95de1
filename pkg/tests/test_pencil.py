from fractions import Fraction

import pytest

from alexcurves.pencil import load_components, parse_affine, pencil_check, reconstruct


def comps(*texts):
    return [parse_affine(t) for t in texts]


def test_cubic_pencil():
    v = pencil_check(comps("y^2 - x^3", "y^2 - x^3 - 1"))
    assert v.is_pencil and v.label == "PENCIL"
    assert v.f == parse_affine("y^2 - x^3")
    assert v.lambdas == (0, -1)
    assert reconstruct(v) == comps("y^2 - x^3", "y^2 - x^3 - 1")


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_parallel_lines(k):
    texts = ["x"] + [f"x - {i}" for i in range(1, k)]
    v = pencil_check(comps(*texts))
    assert v.is_pencil
    assert v.lambdas == tuple(Fraction(-i) for i in range(k))


def test_scaled_components():
    v = pencil_check(comps("2*x*y + 2", "-x*y"))
    assert v.is_pencil
    assert reconstruct(v) == comps("2*x*y + 2", "-x*y")


def test_not_pencil_cases():
    assert not pencil_check(comps("x")).is_pencil
    assert "degrees differ" in pencil_check(comps("x", "y^2 - x")).reason
    assert "not proportional" in pencil_check(comps("x", "y")).reason
    assert pencil_check(comps("x", "y")).to_dict()["verdict"] == "NOT_PENCIL"


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        pencil_check(comps("3", "x"))
    with pytest.raises(ValueError):
        pencil_check(comps("x - 1", "2*x - 2"))
    with pytest.raises(ValueError):
        parse_affine("x^-1 + y")


def test_load_components(tmp_path):
    f = tmp_path / "c.poly"
    f.write_text("# cubic and a translate\ny^2 - x^3\n\ny^2 - x^3 - 1\n")
    assert len(load_components(f)) == 2
    f.write_text("y^2 - x^-3\n")
    with pytest.raises(ValueError, match="line 1"):
        load_components(f)
