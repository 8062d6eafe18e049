""" enspan builder tests """

import numpy as np
import pytest

from hypothesis import given

from enspan.automaton import VarAutomaton
from enspan.builder import (build_product_dag, build_product_dag_extended, trim_dag, compile_tables,
                            label_key, level_mask, eps_targets, eps_sources, sorted_marker_edges,
                            pack_levels, format_dag, move, STEP_CACHE_SIZE)
from enspan.extender import to_extended_va
from enspan.oracle import dag_mappings, oracle_enumerate
from enspan.utils import iter_bits

from helpers import RANDOMIZED, sequential_automata, documents


@pytest.mark.parametrize("labels, ordered", [
    ([(), (1,), (0,)], [(0,), (1,), ()]),
    ([(0, 3), (0,), (), (0, 1)], [(0,), (0, 1), (0, 3), ()]),
])
def test_label_key(labels: list[tuple[int, ...]], ordered: list[tuple[int, ...]]) -> None:
    assert sorted(labels, key=label_key) == ordered


def test_compile_tables(two_variable_va: VarAutomaton) -> None:
    tables = compile_tables(two_variable_va)

    assert tables.finals == 1 << 6
    assert not tables.extended
    assert tables.closure[0] == 0b11
    assert tables.closure[2] == 0b11100
    assert tables.rev_closure[4] == 0b11100
    assert tables.labeled[2] == 1 << 3
    assert tables.topo.index(2) < tables.topo.index(3) < tables.topo.index(4)


def test_compile_tables_cycle() -> None:
    va = VarAutomaton(2, 0, frozenset({1}), (), ((0, 0, 1), (1, 1, 0)), ("x",))
    with pytest.raises(ValueError):
        compile_tables(va)


def test_move_cache(two_variable_va: VarAutomaton) -> None:
    tables = compile_tables(two_variable_va)
    assert move(tables, tables.closure[0], ord("a")) == 0b11100
    assert move(tables, tables.closure[0], ord("b")) == 0
    assert len(tables.moves) == 2 <= STEP_CACHE_SIZE


def test_build_email(email_va: VarAutomaton, email_doc: bytes, email_mappings: set) -> None:
    dag = build_product_dag(email_va, email_doc)
    assert not dag.trimmed
    assert dag.depth == len(email_doc) + 1
    assert dag_mappings(dag) == email_mappings

    trimmed = trim_dag(dag)
    assert trimmed.trimmed
    assert dag_mappings(trimmed) == email_mappings
    assert all(t & ~u == 0 for t, u in zip(trimmed.levels, dag.levels))
    assert sum(m.bit_count() for m in trimmed.levels) < sum(m.bit_count() for m in dag.levels)


def test_build_no_match(email_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(email_va, b"no match"))
    assert dag.empty
    assert all(mask == 0 for mask in dag.levels)
    assert level_mask(dag, dag.depth) == 0
    assert dag_mappings(dag) == set()


def test_build_empty_document(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(two_variable_va, b""))
    assert dag.depth == 1
    assert dag.empty


def test_build_extended(email_va: VarAutomaton, email_doc: bytes, email_mappings: set) -> None:
    dag = trim_dag(build_product_dag_extended(to_extended_va(email_va), email_doc))
    assert dag.tables.extended
    assert dag_mappings(dag) == email_mappings


def test_eps_edges(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(two_variable_va, b"ab"))

    assert dag.levels == (0b11, 0b11100, 0b1100000)
    assert eps_targets(dag, 0, 0b10) == 0b100
    assert eps_sources(dag, 0, 0b100) == 0b10
    assert eps_targets(dag, 2, 1 << 6) == 1
    assert eps_sources(dag, 2, 1) == 1 << 6
    assert level_mask(dag, 3) == 1


def test_sorted_marker_edges(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(two_variable_va, b"ab"))
    assert sorted_marker_edges(dag, 0, 0) == [((0,), 1)]
    assert sorted_marker_edges(dag, 1, 2) == [((1,), 3)]
    assert sorted_marker_edges(dag, 1, 4) == []


def test_pack_levels(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(two_variable_va, b"ab"))
    bitmap = pack_levels(dag)

    assert bitmap.dtype == np.dtype("<u8")
    assert bitmap.shape == (4, 1)
    assert bitmap[:, 0].tolist() == [0b11, 0b11100, 0b1100000, 1]


def test_format_dag(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag(two_variable_va, b"ab"))
    lines = format_dag(dag).split("\n")

    assert "0 0" in lines
    assert "3 f" in lines
    assert "0 0 -> 1 open:x@0" in lines
    assert "0 1 -> 2 eps" in lines
    assert "1 2 -> 3 close:x@1" in lines
    assert "2 6 -> f eps" in lines


@RANDOMIZED
@given(sequential_automata, documents)
def test_dag_paths_random(va: VarAutomaton, doc: bytes) -> None:
    expected = oracle_enumerate(va, doc)

    dag = build_product_dag(va, doc)
    trimmed = trim_dag(dag)
    assert dag_mappings(dag) == expected
    assert dag_mappings(trimmed) == expected
    assert trimmed.empty == (not expected)

    # every trimmed vertex lies on a path to v_f
    for level, mask in enumerate(trimmed.levels):
        for state in iter_bits(mask):
            assert (state_reaches_final(trimmed, level, state)), (level, state)

    extended = trim_dag(build_product_dag_extended(to_extended_va(va), doc))
    assert dag_mappings(extended) == expected


def state_reaches_final(dag, level: int, state: int) -> bool:
    """ co-accessibility by depth-first search over derived edges """
    stack = [(level, state)]
    seen = set(stack)
    while stack:
        level, state = stack.pop()
        if level == len(dag.document):
            if eps_targets(dag, level, 1 << state):
                return True
        else:
            for target in iter_bits(eps_targets(dag, level, 1 << state)):
                if (level + 1, target) not in seen:
                    seen.add((level + 1, target))
                    stack.append((level + 1, target))
        for _, target in sorted_marker_edges(dag, level, state):
            if (level, target) not in seen:
                seen.add((level, target))
                stack.append((level, target))
    return False
