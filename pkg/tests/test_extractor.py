""" enspan extractor tests """

import logging

import pytest

from hypothesis import given

from enspan.errors import BudgetError, EngineError, PatternError
from enspan.automaton import is_empty
from enspan.extractor import ENGINES, compile_pattern, preprocess, extract, extract_compiled
from enspan.oracle import evaluate_formula
from enspan.parser import parse_regex_formula
from enspan.sequencer import check_sequential

from helpers import RANDOMIZED, patterns, documents


def test_compile_pattern(email_pattern: str) -> None:
    formula, va = compile_pattern(email_pattern)
    assert formula.variables == ("x",)
    assert va.variables == ("x",)
    assert check_sequential(va)[0]


def test_compile_pattern_sequentialized(caplog) -> None:
    with caplog.at_level(logging.WARNING):
        _, va = compile_pattern("(x{a})*")

    assert check_sequential(va)[0]
    assert any("not sequential" in record.message for record in caplog.records)


def test_compile_pattern_budget() -> None:
    with pytest.raises(BudgetError):
        compile_pattern("(x{a})*", budget=1)


def test_compile_pattern_error() -> None:
    with pytest.raises(PatternError):
        compile_pattern("x{a")


def test_compile_pattern_empty(caplog) -> None:
    # x is opened twice on every run
    with caplog.at_level(logging.WARNING):
        _, va = compile_pattern("(x{a}){2}")

    assert is_empty(va)
    assert any("empty spanner" in record.message for record in caplog.records)


@pytest.mark.parametrize("engine", ["general", "extended", "oracle"])
def test_extract_empty_spanner(engine: str) -> None:
    assert list(extract("(x{a}){2}", b"aaaa", engine)) == []


def test_preprocess(email_va, email_doc: bytes) -> None:
    dag, index = preprocess(email_va, email_doc)
    assert dag.trimmed
    assert index is not None
    assert index.depth == dag.depth

    dag, index = preprocess(email_va, email_doc, "extended", trim=False)
    assert not dag.trimmed
    assert dag.tables.extended
    assert index is None


def test_preprocess_error(email_va, email_doc: bytes) -> None:
    with pytest.raises(ValueError):
        preprocess(email_va, email_doc, "naive")


@pytest.mark.parametrize("engine", ENGINES)
def test_extract(email_pattern: str, email_doc: bytes, email_mappings: set, engine: str) -> None:
    results = list(extract(email_pattern, email_doc, engine))
    assert len(results) == 2
    assert set(results) == email_mappings


@pytest.mark.parametrize("engine", ENGINES)
def test_extract_compiled(email_pattern: str, email_doc: bytes, email_mappings: set, engine: str) -> None:
    formula, va = compile_pattern(email_pattern)
    assert set(extract_compiled(formula, va, email_doc, engine)) == email_mappings

    with pytest.raises(ValueError):
        extract_compiled(formula, va, email_doc, "fast")


def test_extract_oracle_sorted() -> None:
    results = list(extract("x{a*}", b"aa", "oracle"))
    assert results == sorted(results)
    assert len(results) == 6


def test_extract_errors() -> None:
    with pytest.raises(ValueError):
        extract("a", b"a", "fast")
    # raised before the first result is requested
    with pytest.raises(EngineError):
        extract("x{a}y{b}", b"ab", "naive")


@RANDOMIZED
@given(patterns, documents)
def test_extract_random(pattern: str, doc: bytes) -> None:
    expected = evaluate_formula(parse_regex_formula(pattern), doc)

    for engine in ("general", "extended"):
        results = list(extract(pattern, doc, engine))
        assert len(results) == len(set(results)), engine
        assert set(results) == expected, engine
