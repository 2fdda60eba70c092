import pytest

from bqlinks import ArrowedDiagram, FormatError
from bqlinks.diagram import Arrow, Half, unknot


def test_validate_examples():
    assert ArrowedDiagram(()).validate() == []
    assert ArrowedDiagram.parse("o1+,u1+").is_valid
    errs = ArrowedDiagram.parse("o1+").validate()
    assert errs == ["crossing 1: missing its under half"]


def test_validate_detects_duplicates_and_sign_mismatch():
    assert "duplicate role" in ArrowedDiagram.parse("o1+,o1+").validate()[0]
    assert "sign mismatch" in ArrowedDiagram.parse("o1+,u1-").validate()[0]
    with pytest.raises(FormatError):
        ArrowedDiagram.parse("o1-,o1-").require_valid()


def test_bad_token():
    with pytest.raises(FormatError):
        ArrowedDiagram.parse("x1+")
    with pytest.raises(FormatError):
        ArrowedDiagram.parse("o1")


def test_writhe_and_winding():
    assert ArrowedDiagram.parse("o1+,u1+").writhe() == 1
    assert ArrowedDiagram.parse("a+,a+").winding(0) == 2
    assert ArrowedDiagram.parse("a+,a-").winding(0) == 0
    d = ArrowedDiagram.parse("a+,u1-,o2+;o1-,a-,a-,u2+")
    assert d.writhe() == 0
    assert d.total_winding() == -1


def test_semi_arcs():
    assert unknot().semi_arcs() == [(0, 0)]
    d = ArrowedDiagram.parse("u1+,o2+;o1+,u2+;()")
    assert d.semi_arcs() == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]


def test_serialization_renumbers_in_traversal_order():
    d = ArrowedDiagram.parse("u7+, o3+ ; o7+,u3+  # comment")
    assert d.to_text() == "u1+,o2+;o1+,u2+"
    assert ArrowedDiagram.parse(d.to_text()).same_as(d)
    assert ArrowedDiagram.parse("();a+").to_text() == "();a+"
    assert ArrowedDiagram.parse("").components == ()


def test_events_parse_to_objects():
    d = ArrowedDiagram.parse("a-,u2-,o2-")
    assert d.components[0] == (Arrow(-1), Half(2, "u", -1), Half(2, "o", -1))


def test_cyclic_equivalence():
    a = ArrowedDiagram.parse("o1+,u1+,a+")
    b = ArrowedDiagram.parse("a+,o5+,u5+")
    assert a.equivalent_cyclic(b)
    assert not a.same_as(b)
