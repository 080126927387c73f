import json

import pytest
from hypothesis import given
from hypothesis.strategies import booleans, integers, lists

from polygonal import CheckResult, Report
from polygonal.report import to_plain
from polygonal.operators import rational

# # Tests for report.py


# ## Stacked example

# Builds a report tree the way the verification suites do
# and checks the dotted names and the pass/fail roll-up.


def stacked() -> Report:
    top = Report()
    top.add_check("c1", True, "first")
    top.note = "not a check"
    a = Report()
    a.add_check("c2", True)
    b = Report()
    c = Report()
    c.c3 = CheckResult(False, "third", witness=(rational("1/2"), 3))
    b.c = c
    top.a = a
    top.b = b
    return top


@pytest.mark.report
def test_stacked_demo() -> None:
    "Check that each of the properties match"
    r = stacked()
    names = dict(r.named_results())
    assert set(names) == {"c1", "a.c2", "b.c.c3"}
    assert r.note == "not a check"
    assert r.a.c2.passed
    assert not r.passed
    assert [k for k, _ in r.failures()] == ["b.c.c3"]
    assert len(r.reports()) == 2
    assert r.a.passed


@pytest.mark.report
def test_render() -> None:
    lines = stacked().render().split("\n")
    assert lines[0] == "PASS c1: first"
    assert lines[-1] == "FAIL b.c.c3: third (witness: ['1/2', 3])"
    assert "b.c.c3" in repr(stacked())


@pytest.mark.report
def test_to_json() -> None:
    r = stacked()
    r.counts["volume"] = rational("3/2")
    data = r.to_json()
    assert data["passed"] is False
    assert data["counts"] == {"volume": "3/2"}
    assert data["reports"]["b"]["reports"]["c"]["checks"]["c3"]["witness"] == ["1/2", 3]
    assert json.dumps(data, sort_keys=True) == json.dumps(stacked_json(), sort_keys=True)


def stacked_json() -> dict:
    r = stacked()
    r.counts["volume"] = rational("3/2")
    return r.to_json()


@pytest.mark.report
def test_missing_attribute() -> None:
    with pytest.raises(AttributeError):
        Report().nothing


@pytest.mark.report
def test_plain() -> None:
    assert to_plain({1: {rational("2/4")}}) == {"1": ["1/2"]}
    assert to_plain(None) is None
    assert to_plain(True) is True


# ## Generated trees


@pytest.mark.report
@given(lists(booleans(), max_size=10), integers(min_value=0, max_value=4))
def test_roll_up(outcomes: list, depth: int) -> None:
    top = Report()
    node = top
    for _ in range(depth):
        child = Report()
        setattr(node, "child", child)
        node = child
    for i, ok in enumerate(outcomes):
        node.add_check(f"k{i}", ok)
    assert top.passed == all(outcomes)
    assert len(top.results()) == len(outcomes)
    assert len(top.failures()) == outcomes.count(False)
