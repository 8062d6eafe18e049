"""
duplicate-free enumeration of the mappings of a trimmed DAG

functions:
    - enumerate_mappings    -- stream all mappings (variant "general" or "extended")
    - next_level_extended   -- label/next-level pairs of a level set by a k-way merge (∅ last)
    - next_level_flashlight -- label/next-level pairs of a level set by flashlight search (∅ last)
    - spath_closure         -- vertices reachable by a path whose labels include S+ and avoid S-
    - emit_mapping          -- materialize an accumulated label chain as a sorted mapping

    - level_graph    -- marker-edge subgraph of one level in topological order
    - valid_mapping  -- mapping validity predicate

A mapping is a tuple of (marker, position) pairs sorted by position,
opens before closes, then marker id.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import heapq
import itertools
import logging

from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import NamedTuple

from enspan.automaton import Label, is_open
from enspan.builder import (MappingDag, LevelSet, eps_sources, eps_targets, label_key,
                            level_mask, sorted_marker_edges)
from enspan.jumper import JumpIndex, jump
from enspan.utils import iter_bits


logger = logging.getLogger(__name__)


VARIANTS = ("general", "extended")

Mapping = tuple[tuple[int, int], ...]
Chain = tuple[int, Label, "Chain"] | None


@dataclass
class Probe:
    """
    enumeration instrumentation

    steps       -- vertex/edge touches so far
    emissions   -- (steps since previous emission, frame depth, mapping size) per mapping
    expansions  -- labels yielded by every level-set expansion, in order
    searches    -- flashlight tests as (positive, negative, good)
    """
    steps: int = 0
    emissions: list[tuple[int, int, int]] = field(default_factory=list)
    expansions: list[list[Label]] = field(default_factory=list)
    searches: list[tuple[int, int, bool]] = field(default_factory=list)
    mark: int = 0

    def touch(self, count: int = 1) -> None:
        self.steps += count

    def emit(self, depth: int, size: int) -> None:
        self.emissions.append((self.steps - self.mark, depth, size))
        self.mark = self.steps


class LevelGraph(NamedTuple):
    """ one-level marker-edge graph: vertices in topological order, incoming (source, label) edges """
    order: tuple[int, ...]
    incoming: dict[int, tuple[tuple[int, int], ...]]


def enumerate_mappings(dag: MappingDag,
                       index: JumpIndex,
                       variant: str = "general",
                       *,
                       probe: Probe | None = None
                       ) -> Iterator[Mapping]:
    """
    enumerate every mapping of the DAG once
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param index: jump index of the DAG
    :type index: JumpIndex
    :param variant: "extended" for DAGs of extended VAs, "general" otherwise
    :type variant: str
    :param probe: instrumentation
    :type probe: Probe, optional
    :return: mappings
    :rtype: Iterator[tuple[tuple[int, int], ...]]
    """
    if variant not in VARIANTS:
        raise ValueError(f"unsupported variant: {variant}")
    if (variant == "extended") != dag.tables.extended:
        raise ValueError(f"variant {variant} does not match the DAG")

    if dag.empty:
        return

    if not dag.variables:
        yield ()
        return

    def expand(lam: LevelSet) -> Iterator[tuple[Label, LevelSet]]:
        if variant == "extended":
            items = next_level_extended(dag, lam, probe=probe)
        else:
            items = next_level_flashlight(dag, lam, index.alphabets[lam.level], probe=probe)
        if probe is None:
            return items
        return traced(items, probe)

    depth = dag.depth
    start = jump(index, LevelSet(0, 1 << dag.tables.automaton.initial))
    if start.level == depth:
        yield emit_mapping(None)
        return

    # frames: (level, label/next-level iterator, accumulated chain)
    stack: list[tuple[int, Iterator[tuple[Label, LevelSet]], Chain]] = [(start.level, expand(start), None)]

    while stack:
        level, items, chain = stack[-1]
        item = next(items, None)
        if item is None:
            stack.pop()
            continue

        labels, following = item
        if labels:
            chain = (level, labels, chain)
        else:
            # ∅ comes last: the frame is done, drop it before descending
            assert next(items, None) is None, "∅ label not last"
            stack.pop()

        following = jump(index, following)
        if probe is not None:
            probe.touch(following.members.bit_count())

        if following.level == depth:
            mapping = emit_mapping(chain)
            if probe is not None:
                probe.emit(len(stack) + (0 if labels else 1), len(mapping))
            yield mapping
        else:
            stack.append((following.level, expand(following), chain))


def traced(items: Iterator[tuple[Label, LevelSet]], probe: Probe) -> Iterator[tuple[Label, LevelSet]]:
    """ record yielded labels of one expansion """
    trace: list[Label] = []
    probe.expansions.append(trace)
    for labels, following in items:
        trace.append(labels)
        yield labels, following


def next_level_extended(dag: MappingDag, lam: LevelSet, *, probe: Probe | None = None
                        ) -> Iterator[tuple[Label, LevelSet]]:
    """
    merge the sorted marker-edge lists of the level set; per distinct label (∅ last)
    collect the edge targets and follow their ε-edges
    :param dag: trimmed DAG of an extended VA
    :type dag: MappingDag
    :param lam: level set other than {v_f}
    :type lam: LevelSet
    :param probe: instrumentation
    :type probe: Probe, optional
    :return: (label, next level set) pairs
    :rtype: Iterator[tuple[tuple[int, ...], LevelSet]]
    """
    level, members = lam
    assert level < dag.depth

    edges = [sorted_marker_edges(dag, level, state) for state in iter_bits(members)]
    merged = heapq.merge(*edges, key=lambda edge: label_key(edge[0]))

    for labels, group in itertools.groupby(merged, key=lambda edge: edge[0]):
        targets = 0
        for _, target in group:
            targets |= 1 << target
            if probe is not None:
                probe.touch()
        following = eps_targets(dag, level, targets)
        assert following, "marker edge without ε continuation"
        yield labels, LevelSet(level + 1, following)


def level_graph(dag: MappingDag, level: int) -> LevelGraph:
    """
    marker-edge subgraph of a level (singleton labels, given as marker ids)
    :param dag: trimmed DAG of a VA
    :type dag: MappingDag
    :param level: level
    :type level: int
    :return: level graph
    :rtype: LevelGraph
    """
    present = dag.levels[level]
    order = tuple(state for state in dag.tables.topo if present >> state & 1)
    incoming = {state: tuple((source, label[0]) for source, label in dag.tables.incoming[state]
                             if present >> source & 1)
                for state in order}
    return LevelGraph(order, incoming)


def spath_closure(graph: LevelGraph, lam: int, s_plus: int, s_minus: int, *, probe: Probe | None = None) -> int:
    """
    vertices v with a path from some vertex of `lam` to v that uses every label of S+ and no label of S-;
    labels of every vertex are propagated along the topological order from a fresh source
    linked to `lam` by a fresh label; a vertex keeps the union of its incoming label sets
    (restricted to S+) only if one incoming set already equals that union
    :param graph: level graph
    :type graph: LevelGraph
    :param lam: source vertex bitset
    :type lam: int
    :param s_plus: required label bitset
    :type s_plus: int
    :param s_minus: forbidden label bitset
    :type s_minus: int
    :param probe: instrumentation
    :type probe: Probe, optional
    :return: vertex bitset
    :rtype: int
    """
    assert not s_plus & s_minus

    # bit 0 is the fresh label, label l is bit l + 1
    target = s_plus << 1 | 1
    chi: dict[int, int] = {}
    result = 0

    for vertex in graph.order:
        contributions = [1] if lam >> vertex & 1 else []
        for source, label in graph.incoming[vertex]:
            if source in chi and not s_minus >> label & 1:
                contributions.append((chi[source] | 1 << (label + 1)) & target)
        if probe is not None:
            probe.touch(1 + len(graph.incoming[vertex]))
        if not contributions:
            continue

        union = 0
        for labels in contributions:
            union |= labels
        chi[vertex] = union if union in contributions else 0

        if chi[vertex] == target:
            result |= 1 << vertex

    return result


def next_level_flashlight(dag: MappingDag,
                          lam: LevelSet,
                          alphabet: int | None = None,
                          *,
                          probe: Probe | None = None
                          ) -> Iterator[tuple[Label, LevelSet]]:
    """
    depth-first search of the decision tree over the level's markers K:
    a node (P, N) is good if some path from `lam` containing P and avoiding N
    ends at a vertex with an ε-edge; +m is explored before -m, leaves yield (P, next level set)
    :param dag: trimmed DAG of a VA
    :type dag: MappingDag
    :param lam: level set other than {v_f}
    :type lam: LevelSet
    :param alphabet: marker bitset K of the level (computed if omitted)
    :type alphabet: int, optional
    :param probe: instrumentation
    :type probe: Probe, optional
    :return: (label, next level set) pairs, ∅ last
    :rtype: Iterator[tuple[tuple[int, ...], LevelSet]]
    """
    level, members = lam
    assert level < dag.depth
    assert not dag.tables.extended, "flashlight search runs on DAGs of non-extended VAs"

    if alphabet is None:
        alphabet = 0
        present = dag.levels[level]
        for state in iter_bits(present):
            for label, target in dag.tables.outgoing[state]:
                if present >> target & 1:
                    alphabet |= 1 << label[0]

    markers = list(iter_bits(alphabet))
    if not markers:
        return

    graph = level_graph(dag, level)
    exits = eps_sources(dag, level, level_mask(dag, level + 1))

    def test(positive: int, negative: int) -> int:
        ends = spath_closure(graph, members, positive, negative, probe=probe) & exits
        if probe is not None:
            probe.searches.append((positive, negative, bool(ends)))
        return ends

    root = test(0, 0)
    assert root, "level set without continuation"

    # nodes: (depth, positive, negative, good endpoints); -m pushed first so +m pops first
    stack = [(0, 0, 0, root)]
    while stack:
        depth, positive, negative, ends = stack.pop()

        if depth == len(markers):
            yield tuple(iter_bits(positive)), LevelSet(level + 1, eps_targets(dag, level, ends))
            continue

        marker = 1 << markers[depth]
        without = test(positive, negative | marker)
        including = test(positive | marker, negative)
        if without:
            stack.append((depth + 1, positive, negative | marker, without))
        if including:
            stack.append((depth + 1, positive | marker, negative, including))


def emit_mapping(chain: Chain) -> Mapping:
    """
    materialize a label chain as a sorted mapping
    :param chain: linked (level, labels, parent) chain
    :type chain: tuple | None
    :return: mapping pairs sorted by position, opens before closes, marker id
    :rtype: tuple[tuple[int, int], ...]
    """
    pairs = []
    while chain is not None:
        level, labels, chain = chain
        pairs.extend((marker, level) for marker in labels)

    pairs.sort(key=lambda pair: (pair[1], pair[0] & 1, pair[0]))
    mapping = tuple(pairs)

    assert valid_mapping(mapping), f"invalid mapping: {mapping}"
    return mapping


def valid_mapping(mapping: Mapping) -> bool:
    """
    each marker at most once; a variable is opened iff closed, at a position no later than the close
    :param mapping: (marker, position) pairs
    :type mapping: tuple[tuple[int, int], ...]
    :return: validity
    :rtype: bool
    """
    positions = {}
    for marker, position in mapping:
        if marker in positions:
            return False
        positions[marker] = position

    for marker, position in positions.items():
        partner = marker + 1 if is_open(marker) else marker - 1
        if partner not in positions:
            return False
        if is_open(marker) and position > positions[partner]:
            return False

    return True
