"""
product mapping DAG of an automaton and a document

functions:
    - build_product_dag          -- product DAG of a sequential VA (singleton marker labels)
    - build_product_dag_extended -- product DAG of a normalized extended VA (marker-set labels)
    - trim_dag                   -- restrict to accessible & co-accessible vertices

    - compile_tables     -- document-independent transition tables of an automaton
    - step_table         -- per-byte forward/backward letter steps (computed on demand)
    - eps_targets        -- ε-successors of a vertex set
    - eps_sources        -- vertices of a level with an ε-edge into a vertex set
    - sorted_marker_edges -- marker edges out of a vertex in canonical label order
    - level_mask         -- present vertices of a level (v_f is bit 0 of level n + 1)
    - pack_levels        -- word-padded presence bitmap as a numpy array
    - format_dag         -- text dump of vertices & derived edges

Vertices are (state, level) pairs for levels 0..n stored as one int bitset per level;
the final vertex v_f sits alone at level n + 1, so the depth D is n + 1.
Edges are never stored: they are derived from the transition tables and the document.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from typing import NamedTuple

import numpy as np

from enspan.automaton import Automaton, ExtendedVA, Label, marker_transitions, format_marker
from enspan.extender import check_alternation
from enspan.utils import iter_bits


logger = logging.getLogger(__name__)


STEP_CACHE_SIZE = 1 << 16

FINAL = "f"


class Tables(NamedTuple):
    """ document-independent tables; `steps` & `moves` are filled lazily """
    automaton: Automaton
    extended: bool
    finals: int
    outgoing: tuple[tuple[tuple[Label, int], ...], ...]
    incoming: tuple[tuple[tuple[int, Label], ...], ...]
    topo: tuple[int, ...]
    closure: tuple[int, ...]
    rev_closure: tuple[int, ...]
    empty_closure: tuple[int, ...]
    rev_empty_closure: tuple[int, ...]
    labeled: tuple[int, ...]
    steps: dict
    moves: dict


class LevelSet(NamedTuple):
    """ non-empty set of same-level vertices; {v_f} is (n + 1, 1) """
    level: int
    members: int


class MappingDag(NamedTuple):
    tables: Tables
    document: bytes
    levels: tuple[int, ...]
    trimmed: bool = False

    @property
    def depth(self) -> int:
        """ maximal level D (the level of v_f) """
        return len(self.document) + 1

    @property
    def variables(self) -> tuple[str, ...]:
        return self.tables.automaton.variables

    @property
    def empty(self) -> bool:
        return self.levels[0] == 0


def label_key(label: Label) -> tuple[bool, Label]:
    """ canonical label order: lexicographic by marker id, ∅ last """
    return not label, label


def compile_tables(automaton: Automaton) -> Tables:
    """
    compile transition tables of an automaton
    :param automaton: trimmed sequential (extended) VA
    :type automaton: VarAutomaton | ExtendedVA
    :return: tables
    :rtype: Tables
    :raises ValueError: if variable transitions form a cycle
    """
    size = automaton.num_states
    outgoing: list[list[tuple[Label, int]]] = [[] for _ in range(size)]
    incoming: list[list[tuple[int, Label]]] = [[] for _ in range(size)]

    for source, label, target in marker_transitions(automaton):
        outgoing[source].append((label, target))
        incoming[target].append((source, label))

    for edges in outgoing:
        edges.sort(key=lambda edge: (label_key(edge[0]), edge[1]))

    topo = topological_order(outgoing)

    closure = [0] * size
    empty_closure = [0] * size
    for state in reversed(topo):
        closure[state] = empty_closure[state] = 1 << state
        for label, target in outgoing[state]:
            closure[state] |= closure[target]
            if not label:
                empty_closure[state] |= empty_closure[target]

    rev_closure = [0] * size
    rev_empty_closure = [0] * size
    for state in topo:
        rev_closure[state] = rev_empty_closure[state] = 1 << state
        for source, label in incoming[state]:
            rev_closure[state] |= rev_closure[source]
            if not label:
                rev_empty_closure[state] |= rev_empty_closure[source]

    labeled = [0] * size
    for state in range(size):
        for label, target in outgoing[state]:
            if label:
                labeled[state] |= 1 << target

    return Tables(automaton=automaton,
                  extended=isinstance(automaton, ExtendedVA),
                  finals=sum(1 << q for q in automaton.finals),
                  outgoing=tuple(tuple(edges) for edges in outgoing),
                  incoming=tuple(tuple(edges) for edges in incoming),
                  topo=tuple(topo),
                  closure=tuple(closure),
                  rev_closure=tuple(rev_closure),
                  empty_closure=tuple(empty_closure),
                  rev_empty_closure=tuple(rev_empty_closure),
                  labeled=tuple(labeled),
                  steps={},
                  moves={})


def topological_order(outgoing: list[list[tuple[Label, int]]]) -> list[int]:
    """ Kahn's algorithm over the marker-transition graph """
    indegree = [0] * len(outgoing)
    for edges in outgoing:
        for _, target in edges:
            indegree[target] += 1

    order = [state for state, degree in enumerate(indegree) if degree == 0]
    for state in order:
        for _, target in outgoing[state]:
            indegree[target] -= 1
            if indegree[target] == 0:
                order.append(target)

    if len(order) != len(outgoing):
        raise ValueError("cycle of variable transitions: automaton is not sequential")

    return order


def step_table(tables: Tables, byte: int) -> tuple[list[int], list[int]]:
    """
    forward & backward letter steps for one byte: successor and predecessor bitsets per state
    :param tables: tables
    :type tables: Tables
    :param byte: document byte
    :type byte: int
    :return: forward & backward tables
    :rtype: tuple[list[int], list[int]]
    """
    table = tables.steps.get(byte)
    if table is None:
        size = tables.automaton.num_states
        forward, backward = [0] * size, [0] * size
        for source, cls, target in tables.automaton.letter_transitions:
            if byte in cls:
                forward[source] |= 1 << target
                backward[target] |= 1 << source
        table = tables.steps[byte] = (forward, backward)
    return table


def gather(table: list[int] | tuple[int, ...], mask: int) -> int:
    """ union of table rows selected by a bitset """
    result = 0
    for state in iter_bits(mask):
        result |= table[state]
    return result


def move(tables: Tables, mask: int, byte: int) -> int:
    """ read one byte from a closed state set, then close under marker transitions """
    key = (mask, byte)
    result = tables.moves.get(key)
    if result is None:
        result = gather(tables.closure, gather(step_table(tables, byte)[0], mask))
        if len(tables.moves) >= STEP_CACHE_SIZE:
            tables.moves.clear()
        tables.moves[key] = result
    return result


def build_product_dag(va: Automaton, doc: bytes) -> MappingDag:
    """
    build the product DAG of a VA and a document; presence by forward reachability from (q0, 0)
    :param va: trimmed sequential VA
    :type va: VarAutomaton
    :param doc: document
    :type doc: bytes
    :return: untrimmed DAG
    :rtype: MappingDag
    """
    return build(compile_tables(va), doc)


def build_product_dag_extended(eva: ExtendedVA, doc: bytes) -> MappingDag:
    """
    build the product DAG of a normalized extended VA and a document
    :param eva: trimmed sequential extended VA
    :type eva: ExtendedVA
    :param doc: document
    :type doc: bytes
    :return: untrimmed DAG
    :rtype: MappingDag
    """
    check_alternation(eva)
    return build(compile_tables(eva), doc)


def build(tables: Tables, doc: bytes) -> MappingDag:
    """ forward presence sweep """
    levels = [0] * (len(doc) + 1)

    if tables.automaton.num_states:
        mask = tables.closure[tables.automaton.initial]
        levels[0] = mask
        for i, byte in enumerate(doc):
            mask = move(tables, mask, byte)
            if not mask:
                break
            levels[i + 1] = mask

    logger.debug("built DAG: %d levels, %d vertices", len(levels) + 1, sum(m.bit_count() for m in levels))
    return MappingDag(tables, bytes(doc), tuple(levels))


def trim_dag(dag: MappingDag) -> MappingDag:
    """
    keep vertices accessible from (q0, 0) and co-accessible to v_f (backward sweep over forward presence)
    :param dag: DAG
    :type dag: MappingDag
    :return: trimmed DAG (all levels empty if the spanner is empty on the document)
    :rtype: MappingDag
    """
    tables, doc, levels = dag.tables, dag.document, dag.levels
    size = len(doc)
    trimmed = [0] * (size + 1)

    mask = levels[size] & gather(tables.rev_closure, levels[size] & tables.finals)
    trimmed[size] = mask
    for i in range(size - 1, -1, -1):
        if not mask:
            break
        exits = levels[i] & gather(step_table(tables, doc[i])[1], mask)
        mask = levels[i] & gather(tables.rev_closure, exits)
        trimmed[i] = mask

    if not levels[0] or not trimmed[0] >> tables.automaton.initial & 1:
        trimmed = [0] * (size + 1)

    logger.debug("trimmed DAG: %d -> %d vertices",
                 sum(m.bit_count() for m in levels), sum(m.bit_count() for m in trimmed))
    return dag._replace(levels=tuple(trimmed), trimmed=True)


def level_mask(dag: MappingDag, level: int) -> int:
    """ present vertices of a level; level n + 1 holds v_f as bit 0 """
    if level == dag.depth:
        return 1 if dag.levels[-1] & dag.tables.finals else 0
    return dag.levels[level]


def eps_targets(dag: MappingDag, level: int, mask: int) -> int:
    """
    present ε-successors of vertices `mask` at `level`
    :param dag: DAG
    :type dag: MappingDag
    :param level: level of the vertices
    :type level: int
    :param mask: vertex bitset
    :type mask: int
    :return: vertex bitset at level + 1 (v_f as bit 0 at the last level)
    :rtype: int
    """
    if level == len(dag.document):
        return 1 if mask & dag.tables.finals else 0
    forward = step_table(dag.tables, dag.document[level])[0]
    return gather(forward, mask) & dag.levels[level + 1]


def eps_sources(dag: MappingDag, level: int, mask: int) -> int:
    """ present vertices of `level` with an ε-edge into `mask` at level + 1 """
    if level == len(dag.document):
        return dag.levels[level] & dag.tables.finals if mask & 1 else 0
    backward = step_table(dag.tables, dag.document[level])[1]
    return gather(backward, mask) & dag.levels[level]


def sorted_marker_edges(dag: MappingDag, level: int, state: int) -> list[tuple[Label, int]]:
    """
    marker edges out of vertex (state, level) to present vertices,
    ordered by label (lexicographic by marker id, ∅ last)
    :param dag: DAG
    :type dag: MappingDag
    :param level: vertex level
    :type level: int
    :param state: vertex state
    :type state: int
    :return: (label, target state) pairs; labels are marker ids at position `level`
    :rtype: list[tuple[tuple[int, ...], int]]
    """
    present = dag.levels[level]
    return [(label, target) for label, target in dag.tables.outgoing[state] if present >> target & 1]


def pack_levels(dag: MappingDag) -> np.ndarray:
    """
    presence bitmap with every level (v_f level included) padded to 64-bit words
    :param dag: DAG
    :type dag: MappingDag
    :return: array of shape (D + 1, words)
    :rtype: np.ndarray
    """
    words = max(1, -(-dag.tables.automaton.num_states // 64))
    rows = list(dag.levels) + [level_mask(dag, dag.depth)]
    data = b"".join(mask.to_bytes(8 * words, "little") for mask in rows)
    return np.frombuffer(data, dtype="<u8").reshape(len(rows), words)


def format_label(label: Label, level: int, variables: tuple[str, ...]) -> str:
    """ marker-edge label as `open:x@i,close:y@i` (`empty` for ∅) """
    if not label:
        return "empty"
    return ",".join(f"{format_marker(marker, variables)}@{level}" for marker in label)


def format_dag(dag: MappingDag) -> str:
    """
    text dump: `level state` per present vertex, `level state -> state' label` per derived edge
    :param dag: DAG
    :type dag: MappingDag
    :return: dump
    :rtype: str
    """
    lines = []
    variables = dag.variables

    for level, mask in enumerate(dag.levels):
        for state in iter_bits(mask):
            lines.append(f"{level} {state}")
    if level_mask(dag, dag.depth):
        lines.append(f"{dag.depth} {FINAL}")

    for level, mask in enumerate(dag.levels):
        for state in iter_bits(mask):
            for label, target in sorted_marker_edges(dag, level, state):
                lines.append(f"{level} {state} -> {target} {format_label(label, level, variables)}")
            targets = eps_targets(dag, level, 1 << state)
            if level == len(dag.document):
                lines.extend([f"{level} {state} -> {FINAL} eps"] if targets else [])
            else:
                lines.extend(f"{level} {state} -> {target} eps" for target in iter_bits(targets))

    return "\n".join(lines)
