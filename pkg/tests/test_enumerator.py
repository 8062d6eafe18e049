""" enspan enumerator tests """

import itertools

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from enspan.automaton import VarAutomaton
from enspan.builder import (LevelSet, build_product_dag, build_product_dag_extended, trim_dag, label_key,
                            eps_sources, eps_targets, level_mask)
from enspan.enumerator import (Probe, LevelGraph, enumerate_mappings, next_level_flashlight, next_level_extended,
                               spath_closure, emit_mapping, valid_mapping, level_graph)
from enspan.extender import to_extended_va
from enspan.extractor import compile_pattern, preprocess
from enspan.oracle import oracle_enumerate
from enspan.utils import synth

from helpers import RANDOMIZED, sequential_automata, documents, level_graphs, exhaustive_closure


def run(va: VarAutomaton, doc: bytes, variant: str = "general", probe: Probe | None = None) -> list:
    dag, index = preprocess(va, doc, variant)
    return list(enumerate_mappings(dag, index, variant, probe=probe))


@pytest.mark.parametrize("variant", ["general", "extended"])
def test_enumerate_email(email_va: VarAutomaton, email_doc: bytes, email_mappings: set, variant: str) -> None:
    results = run(email_va, email_doc, variant)
    assert len(results) == 2
    assert set(results) == email_mappings


@pytest.mark.parametrize("variant", ["general", "extended"])
def test_enumerate_two_variables(two_variable_va: VarAutomaton, variant: str) -> None:
    assert run(two_variable_va, b"ab", variant) == [((0, 0), (2, 1), (1, 1), (3, 2))]
    assert run(two_variable_va, b"ba", variant) == []
    assert run(two_variable_va, b"", variant) == []


def test_enumerate_no_variables() -> None:
    va = VarAutomaton(2, 0, frozenset({1}), ((0, frozenset(b"a"), 1),), (), ())
    assert run(va, b"a") == [()]
    assert run(va, b"b") == []


def test_enumerate_empty_span() -> None:
    _, va = compile_pattern("x{}")
    assert sorted(run(va, b"ab")) == [((0, i), (1, i)) for i in range(3)]


@pytest.mark.parametrize("variant", ["unknown", "extended"])
def test_enumerate_variant_error(two_variable_va: VarAutomaton, variant: str) -> None:
    dag, index = preprocess(two_variable_va, b"ab", "general")
    with pytest.raises(ValueError):
        list(enumerate_mappings(dag, index, variant))


def test_enumerate_general_on_extended_dag(two_variable_va: VarAutomaton) -> None:
    dag, index = preprocess(two_variable_va, b"ab", "extended")
    with pytest.raises(ValueError):
        list(enumerate_mappings(dag, index, "general"))


def test_next_level_flashlight_order() -> None:
    # 0 -open:x-> 1 -close:x-> 2; 0 & 2 read `a`, 1 has no ε-edge
    va = VarAutomaton(num_states=4,
                      initial=0,
                      finals=frozenset({3}),
                      letter_transitions=((0, frozenset(b"a"), 3), (2, frozenset(b"a"), 3)),
                      variable_transitions=((0, 0, 1), (1, 1, 2)),
                      variables=("x",))
    dag = trim_dag(build_product_dag(va, b"a"))
    probe = Probe()
    items = list(next_level_flashlight(dag, LevelSet(0, 0b1), probe=probe))

    assert [labels for labels, _ in items] == [(0, 1), ()]
    assert all(following == LevelSet(1, 1 << 3) for _, following in items)
    # root, then both children of each surviving node
    assert len(probe.searches) == 1 + 2 + 2 + 2
    assert (0b1, 0b10, False) in probe.searches


def test_next_level_extended_order(two_variable_va: VarAutomaton) -> None:
    dag = trim_dag(build_product_dag_extended(to_extended_va(two_variable_va), b"ab"))
    items = list(next_level_extended(dag, LevelSet(0, 1 << dag.tables.automaton.initial)))

    assert [labels for labels, _ in items] == [(0,)]
    assert items[0][1].level == 1


def test_spath_closure() -> None:
    # 0 -l0-> 1 -l1-> 3, 0 -l2-> 2 -l1-> 3
    graph = LevelGraph(order=(0, 1, 2, 3),
                       incoming={0: (), 1: ((0, 0),), 2: ((0, 2),), 3: ((1, 1), (2, 1))})

    assert spath_closure(graph, 0b1, 0, 0) == 0b1111
    assert spath_closure(graph, 0b1, 0b10, 0) == 0b1000
    assert spath_closure(graph, 0b1, 0b11, 0) == 0b1000
    assert spath_closure(graph, 0b1, 0b101, 0) == 0
    assert spath_closure(graph, 0b1, 0b10, 0b1) == 0b1000
    assert spath_closure(graph, 0b1, 0b10, 0b101) == 0
    assert spath_closure(graph, 0b10, 0, 0) == 0b1010


@settings(RANDOMIZED, max_examples=500)
@given(level_graphs())
def test_spath_closure_random(case: tuple[LevelGraph, int, int, int]) -> None:
    graph, sources, s_plus, s_minus = case
    assert spath_closure(graph, sources, s_plus, s_minus) == exhaustive_closure(graph, sources, s_plus, s_minus)


@pytest.mark.parametrize("mapping, valid", [
    ((), True),
    (((0, 1), (1, 1)), True),
    (((0, 1), (1, 3), (2, 2), (3, 4)), True),
    (((0, 2), (1, 1)), False),
    (((0, 1),), False),
    (((1, 1),), False),
    (((0, 1), (0, 2), (1, 3)), False),
])
def test_valid_mapping(mapping: tuple, valid: bool) -> None:
    assert valid_mapping(mapping) == valid


def test_emit_mapping() -> None:
    chain = (3, (1, 3), (1, (2,), (0, (0,), None)))
    assert emit_mapping(None) == ()
    assert emit_mapping(chain) == ((0, 0), (2, 1), (1, 3), (3, 3))


def test_probe(email_va: VarAutomaton, email_doc: bytes) -> None:
    probe = Probe()
    results = run(email_va, email_doc, probe=probe)

    assert len(probe.emissions) == len(results)
    assert sum(steps for steps, _, _ in probe.emissions) == probe.mark <= probe.steps
    assert all(size == 2 for _, _, size in probe.emissions)
    assert probe.searches


@settings(RANDOMIZED, max_examples=1000)
@given(sequential_automata, documents)
def test_enumerate_random(va: VarAutomaton, doc: bytes) -> None:
    expected = oracle_enumerate(va, doc)

    for variant in ("general", "extended"):
        probe = Probe()
        results = run(va, doc, variant, probe)

        assert len(results) == len(set(results)), variant
        assert set(results) == expected, variant
        assert results == run(va, doc, variant), "nondeterministic order"

        # ∅ closes an expansion; extended labels come in canonical order
        for trace in probe.expansions:
            assert () not in trace[:-1]
            assert len(trace) == len(set(trace))
            if variant == "extended":
                assert trace == sorted(trace, key=label_key)

        # frames on the stack never outnumber the labels of the mapping being built
        for _, depth, size in probe.emissions:
            assert depth <= size + 1 <= 2 * len(va.variables) + 1


@RANDOMIZED
@given(sequential_automata, documents, st.data())
def test_flashlight_monotone(va: VarAutomaton, doc: bytes, data: st.DataObject) -> None:
    dag = trim_dag(build_product_dag(va, doc))
    present = [(level, mask) for level, mask in enumerate(dag.levels) if mask]
    if not present:
        return

    level, mask = data.draw(st.sampled_from(present))
    members = data.draw(st.integers(1, mask)) & mask or mask
    graph = level_graph(dag, level)
    exits = eps_sources(dag, level, level_mask(dag, level + 1))
    alphabet = 0
    for edges in graph.incoming.values():
        for _, marker in edges:
            alphabet |= 1 << marker

    probe = Probe()
    items = list(next_level_flashlight(dag, LevelSet(level, members), probe=probe))

    # no good node below a bad one
    for (p1, n1, good1), (p2, n2, good2) in itertools.product(probe.searches, repeat=2):
        if p1 & ~p2 == 0 and n1 & ~n2 == 0 and not good1:
            assert not good2

    # every yielded label is the exact marker set of a path ending with an ε-edge
    assert len(items) == len({labels for labels, _ in items})
    for labels, following in items:
        positive = sum(1 << marker for marker in labels)
        ends = spath_closure(graph, members, positive, alphabet & ~positive) & exits
        assert ends
        assert following == LevelSet(level + 1, eps_targets(dag, level, ends))


@pytest.mark.slow
def test_delay_steps_do_not_grow() -> None:
    _, va = compile_pattern("x{AC+G}")
    block = synth(512, seed=7)
    worst = []

    for copies in (2, 16):
        probe = Probe()
        results = run(va, block * copies, probe=probe)
        assert results
        # skip the first emission: it includes the descent into the first jump level
        worst.append(max(steps for steps, _, _ in probe.emissions[1:]))

    assert worst[1] <= 1.1 * worst[0]
