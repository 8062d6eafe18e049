""" enspan common test data """

import pytest

from enspan.automaton import VarAutomaton, trim_va
from enspan.compiler import compile_to_va
from enspan.parser import parse_regex_formula


# email-like pattern & document with two matches
@pytest.fixture(name="email_pattern")
def fixture_email_pattern() -> str:
    return "x{[^@ ]+@[^@ ]+}"


@pytest.fixture(name="email_doc")
def fixture_email_doc() -> bytes:
    """
    document with spaces as separators

    positions: a=0 ' '=1 a=2 @=3 b=4 ' '=5 b=6 @=7 c=8
    """
    return b"a a@b b@c"


@pytest.fixture(name="email_mappings")
def fixture_email_mappings() -> set[tuple[tuple[int, int], ...]]:
    """ x:[2,5) & x:[6,9) """
    return {((0, 2), (1, 5)), ((0, 6), (1, 9))}


@pytest.fixture(name="email_va")
def fixture_email_va(email_pattern: str) -> VarAutomaton:
    return trim_va(compile_to_va(parse_regex_formula(email_pattern)))


@pytest.fixture(name="email_file")
def fixture_email_file(tmp_path, email_doc: bytes) -> str:
    path = tmp_path / "doc.txt"
    path.write_bytes(email_doc)
    return str(path)


@pytest.fixture(name="two_variable_va")
def fixture_two_variable_va() -> VarAutomaton:
    """
    hand-built sequential VA for `x{a}y{b}` without Σ* wrapping

    0 -open:x-> 1 -a-> 2 -close:x-> 3 -open:y-> 4 -b-> 5 -close:y-> 6 (final)
    """
    return VarAutomaton(num_states=7,
                        initial=0,
                        finals=frozenset({6}),
                        letter_transitions=((1, frozenset(b"a"), 2), (4, frozenset(b"b"), 5)),
                        variable_transitions=((0, 0, 1), (2, 1, 3), (3, 2, 4), (5, 3, 6)),
                        variables=("x", "y"))
