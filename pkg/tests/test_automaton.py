""" enspan automaton tests """

import pytest

from enspan.automaton import VarAutomaton, ExtendedVA
from enspan.automaton import open_marker, close_marker, marker_variable, is_open, format_marker
from enspan.automaton import marker_transitions, automaton_size, is_empty, trim_va


@pytest.mark.parametrize("variable, opening, closing", [
    (0, 0, 1),
    (1, 2, 3),
    (5, 10, 11),
])
def test_markers(variable: int, opening: int, closing: int) -> None:
    assert open_marker(variable) == opening
    assert close_marker(variable) == closing
    assert marker_variable(opening) == marker_variable(closing) == variable
    assert is_open(opening)
    assert not is_open(closing)


@pytest.mark.parametrize("marker, text", [
    (0, "open:x"),
    (1, "close:x"),
    (3, "close:y"),
])
def test_format_marker(marker: int, text: str) -> None:
    assert format_marker(marker, ("x", "y")) == text


def test_marker_transitions(two_variable_va: VarAutomaton) -> None:
    assert list(marker_transitions(two_variable_va)) == [(0, (0,), 1), (2, (1,), 3), (3, (2,), 4), (5, (3,), 6)]
    assert automaton_size(two_variable_va) == 7 + 2 + 4


def test_marker_transitions_extended() -> None:
    eva = ExtendedVA(2, 0, frozenset({1}), (), ((0, (0, 1), 1),), frozenset({0}), ("x",))
    assert list(marker_transitions(eva)) == [(0, (0, 1), 1)]


def test_trim_va_keeps_useful(two_variable_va: VarAutomaton) -> None:
    assert trim_va(two_variable_va) == two_variable_va


def test_trim_va_removes_and_renumbers() -> None:
    # 1 is a dead end, 3 is unreachable
    va = VarAutomaton(num_states=4,
                      initial=0,
                      finals=frozenset({2}),
                      letter_transitions=((0, frozenset(b"a"), 1), (0, frozenset(b"b"), 2), (3, frozenset(b"a"), 2)),
                      variable_transitions=((0, 0, 1),),
                      variables=("x",))
    trimmed = trim_va(va)

    assert trimmed.num_states == 2
    assert trimmed.finals == frozenset({1})
    assert trimmed.letter_transitions == ((0, frozenset(b"b"), 1),)
    assert trimmed.variable_transitions == ()
    assert trimmed.variables == ("x",)


def test_trim_va_empty() -> None:
    va = VarAutomaton(2, 0, frozenset({1}), (), (), ())
    trimmed = trim_va(va)
    assert trimmed.num_states == 0
    assert is_empty(trimmed)
    assert trimmed.finals == frozenset()
