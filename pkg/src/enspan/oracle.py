"""
ground-truth oracles & naive baseline

functions:
    - oracle_enumerate     -- mappings of all valid accepting runs by exhaustive run enumeration
    - evaluate_formula     -- mappings of a formula by direct recursive matching over the AST
    - dag_mappings         -- path-label sets of a DAG by exhaustive path enumeration
    - bfs_jump_levels      -- jump levels by breadth-first search
    - bfs_reach            -- Reach(i, j) rows by breadth-first search
    - naive_scan_enumerate -- single-capture baseline: an NFA run started at every position

    - scan        -- the baseline scan loop over a marker-free NFA
    - has_capture -- capture test of a subtree

Oracles are exponential; they are meant for small instances only.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from collections import deque
from collections.abc import Iterator
from functools import cache

from enspan.automaton import Automaton, VarAutomaton, marker_transitions, is_open, trim_va, open_marker, close_marker
from enspan.builder import (MappingDag, LevelSet, compile_tables, eps_targets, move, sorted_marker_edges)
from enspan.compiler import compile_node
from enspan.errors import BudgetError, EngineError
from enspan.parser import (RegexFormula, Node, Literal, AnyChar, CharClass, Concat, Union,
                           Star, Plus, Optional, Counter, Capture, Epsilon, NEWLINE)
from enspan.utils import iter_bits, compress


logger = logging.getLogger(__name__)


ORACLE_BUDGET = 10_000_000

Mapping = tuple[tuple[int, int], ...]
Pairs = frozenset[tuple[int, int]]


def canonical(pairs: Pairs) -> Mapping:
    """ sort pairs by position, opens before closes, marker id """
    return tuple(sorted(pairs, key=lambda pair: (pair[1], pair[0] & 1, pair[0])))


def oracle_enumerate(automaton: Automaton, doc: bytes, *, budget: int = ORACLE_BUDGET) -> set[Mapping]:
    """
    enumerate accepting runs depth-first over configurations (state, position, pairs read),
    dropping invalid marker uses, and collect their mappings
    :param automaton: (extended) VA, sequential or not
    :type automaton: VarAutomaton | ExtendedVA
    :param doc: document
    :type doc: bytes
    :param budget: maximum explored configurations
    :type budget: int
    :return: mappings
    :rtype: set[tuple[tuple[int, int], ...]]
    :raises BudgetError: if the budget is exceeded
    """
    if automaton.num_states == 0:
        return set()

    letters: list[list[tuple[frozenset[int], int]]] = [[] for _ in range(automaton.num_states)]
    markers: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(automaton.num_states)]
    for source, cls, target in automaton.letter_transitions:
        letters[source].append((cls, target))
    for source, label, target in marker_transitions(automaton):
        markers[source].append((label, target))

    size = len(doc)
    results = set()
    start = (automaton.initial, 0, frozenset())
    seen = {start}
    stack = [start]
    explored = 0

    while stack:
        state, position, pairs = stack.pop()
        explored += 1
        if explored > budget:
            raise BudgetError("oracle budget exceeded", explored)

        read = {marker for marker, _ in pairs}

        if position == size and state in automaton.finals and all(not is_open(m) or m + 1 in read for m in read):
            results.add(canonical(pairs))

        following = []
        if position < size:
            following.extend((target, position + 1, pairs)
                             for cls, target in letters[state] if doc[position] in cls)
        for label, target in markers[state]:
            if any(marker in read for marker in label):
                continue
            if any(not is_open(marker) and marker - 1 not in read and marker - 1 not in label for marker in label):
                continue
            following.append((target, position, pairs | {(marker, position) for marker in label}))

        for configuration in following:
            if configuration not in seen:
                seen.add(configuration)
                stack.append(configuration)

    return results


def evaluate_formula(formula: RegexFormula, doc: bytes) -> set[Mapping]:
    """
    evaluate a formula (with its Σ* wrapping) by recursive matching over all span assignments
    :param formula: formula
    :type formula: RegexFormula
    :param doc: document
    :type doc: bytes
    :return: mappings
    :rtype: set[tuple[tuple[int, int], ...]]
    """
    size = len(doc)

    def combine(left: set[tuple[int, Pairs]], node: Node) -> set[tuple[int, Pairs]]:
        result = set()
        for end, pairs in left:
            for following, more in match(node, end):
                if not {m for m, _ in pairs} & {m for m, _ in more}:
                    result.add((following, pairs | more))
        return result

    @cache
    def match(node: Node, start: int) -> frozenset[tuple[int, Pairs]]:
        empty: Pairs = frozenset()
        match node:
            case Epsilon():
                return frozenset({(start, empty)})
            case Literal(byte=byte):
                ok = start < size and doc[start] == byte
            case AnyChar():
                ok = start < size and doc[start] != NEWLINE
            case CharClass(members=members):
                ok = start < size and doc[start] in members
            case Concat(items=items):
                states = {(start, empty)}
                for item in items:
                    states = combine(states, item)
                return frozenset(states)
            case Union(items=items):
                return frozenset().union(*(match(item, start) for item in items))
            case Star(child=child):
                return frozenset(repeat(child, start, 0, None))
            case Plus(child=child):
                return frozenset(repeat(child, start, 1, None))
            case Optional(child=child):
                return match(child, start) | {(start, empty)}
            case Counter(child=child, min=low, max=high):
                return frozenset(repeat(child, start, low, high))
            case Capture(variable=variable, child=child):
                return frozenset((end, pairs | {(open_marker(variable), start), (close_marker(variable), end)})
                                 for end, pairs in match(child, start)
                                 if open_marker(variable) not in {m for m, _ in pairs})
            case _:
                raise ValueError(f"unsupported node: {node!r}")
        return frozenset({(start + 1, empty)}) if ok else frozenset()

    def repeat(child: Node, start: int, low: int, high: int | None) -> set[tuple[int, Pairs]]:
        states = {(start, frozenset())}
        result = set(states) if low == 0 else set()
        count = 0
        while states and (high is None or count < high):
            states = combine(states, child)
            count += 1
            if high is None:
                states -= result
            if count >= low:
                result |= states
        return result

    return {canonical(pairs) for end, pairs in match(formula.root, 0) if end == size}


def dag_mappings(dag: MappingDag, lam: LevelSet | None = None) -> set[Mapping]:
    """
    label sets of all paths from a level set (default: the initial vertex) to v_f
    :param dag: DAG
    :type dag: MappingDag
    :param lam: level set
    :type lam: LevelSet, optional
    :return: mappings
    :rtype: set[tuple[tuple[int, int], ...]]
    """
    size = len(dag.document)
    if dag.empty:
        return set()

    @cache
    def suffixes(level: int, state: int) -> frozenset[Pairs]:
        result = set()
        for label, target in sorted_marker_edges(dag, level, state):
            here = frozenset((marker, level) for marker in label)
            result.update(here | rest for rest in suffixes(level, target))
        targets = eps_targets(dag, level, 1 << state)
        if level == size:
            if targets:
                result.add(frozenset())
        else:
            for target in iter_bits(targets):
                result.update(suffixes(level + 1, target))
        return frozenset(result)

    if lam is None:
        lam = LevelSet(0, 1 << dag.tables.automaton.initial)
    if lam.level == dag.depth:
        return {()}

    return {canonical(pairs) for state in iter_bits(lam.members) for pairs in suffixes(lam.level, state)}


def bfs_jump_levels(dag: MappingDag) -> dict[tuple[int, int], int]:
    """
    jump level of every present vertex: the minimal level of a vertex reachable by ε/∅ edges
    that is v_f or has a non-∅ marker edge
    :param dag: trimmed DAG
    :type dag: MappingDag
    :return: jump level by (level, state)
    :rtype: dict[tuple[int, int], int]
    """
    size = len(dag.document)
    levels = {}

    for level, present in enumerate(dag.levels):
        for state in iter_bits(present):
            best = None
            seen = {(level, state)}
            queue = deque([(level, state)])
            while queue:
                current, vertex = queue.popleft()
                if current == size + 1:
                    best = current if best is None else min(best, current)
                    continue
                edges = sorted_marker_edges(dag, current, vertex)
                if any(label for label, _ in edges):
                    best = current if best is None else min(best, current)
                following = [(current, target) for label, target in edges if not label]
                targets = eps_targets(dag, current, 1 << vertex)
                following += [(current + 1, target) for target in iter_bits(targets)]
                for node in following:
                    if node not in seen:
                        seen.add(node)
                        queue.append(node)
            levels[(level, state)] = best

    return levels


def bfs_reach(dag: MappingDag, source: int, target: int) -> list[int]:
    """
    Reach(source, target) rows: bit v of row u is set if a path of ε/∅ edges whose last edge is ε
    leads from the u-th vertex of level `source` to the v-th vertex of level `target`
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param source: level i
    :type source: int
    :param target: level j > i
    :type target: int
    :return: dense row bitsets
    :rtype: list[int]
    """
    size = len(dag.document)
    universe = 1 if target == size + 1 else dag.levels[target]
    rows = []

    for state in iter_bits(dag.levels[source]):
        reached = 0
        seen = {(source, state, False)}
        queue = deque(seen)
        while queue:
            level, vertex, by_eps = queue.popleft()
            if level == target:
                if by_eps:
                    reached |= 1 << vertex
                if level == size + 1:
                    continue
            if level > target:
                continue
            following = [(level, t, False) for label, t in sorted_marker_edges(dag, level, vertex) if not label]
            following += [(level + 1, t, True) for t in iter_bits(eps_targets(dag, level, 1 << vertex))]
            for node in following:
                if node[0] <= target and node not in seen:
                    seen.add(node)
                    queue.append(node)
        rows.append(compress(reached, universe))

    return rows


def naive_scan_enumerate(formula: RegexFormula, doc: bytes) -> Iterator[Mapping]:
    """
    baseline for a single capture around the whole pattern:
    run the NFA of the captured expression from every start position,
    report every accepting end position, stop a run when its state set empties
    :param formula: formula with exactly one capture enclosing the whole pattern (or none)
    :type formula: RegexFormula
    :param doc: document
    :type doc: bytes
    :return: mappings ((0, i), (1, j)) ordered by i, then j
    :rtype: Iterator[tuple[tuple[int, int], ...]]
    :raises EngineError: for any other formula
    """
    if formula.implicit:
        body = formula.body
    elif isinstance(formula.body, Capture) and len(formula.variables) == 1 and not has_capture(formula.body.child):
        body = formula.body.child
    else:
        raise EngineError("naive engine requires a single capture around the whole pattern")

    return scan(trim_va(compile_node(body)), doc)


def scan(nfa: VarAutomaton, doc: bytes) -> Iterator[Mapping]:
    """ run a marker-free NFA from every start position """
    if nfa.num_states == 0:
        return

    tables = compile_tables(nfa)
    size = len(doc)

    for start in range(size + 1):
        states = tables.closure[nfa.initial]
        end = start
        while states:
            if states & tables.finals:
                yield (open_marker(0), start), (close_marker(0), end)
            if end == size:
                break
            states = move(tables, states, doc[end])
            end += 1


def has_capture(node: Node) -> bool:
    """ True if the subtree contains a capture """
    match node:
        case Capture():
            return True
        case Concat(items=items) | Union(items=items):
            return any(has_capture(item) for item in items)
        case Star(child=child) | Plus(child=child) | Optional(child=child) | Counter(child=child):
            return has_capture(child)
    return False
