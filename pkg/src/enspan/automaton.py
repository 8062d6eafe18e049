"""
variable-set automata: types, marker encoding & trimming

functions:
    - trim_va -- keep accessible & co-accessible states only

    - open_marker / close_marker -- marker ids of a variable
    - marker_variable            -- variable id of a marker
    - is_open                    -- marker kind
    - format_marker              -- marker as text (open:x / close:x)
    - marker_transitions         -- variable (or ev-) transitions as (source, label, target)
    - automaton_size             -- number of states & transitions (|A|)
    - is_empty                   -- empty spanner check

markers:
    variable v has open marker 2v (v⊢) and close marker 2v + 1 (⊣v);
    marker order is ascending marker id.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from collections import deque
from collections.abc import Iterator
from typing import NamedTuple


logger = logging.getLogger(__name__)


LetterTransition = tuple[int, frozenset[int], int]
Label = tuple[int, ...]


class VarAutomaton(NamedTuple):
    """
    variable-set automaton (VA) over bytes

    letter transitions carry byte classes; variable transitions carry a single marker id
    """
    num_states: int
    initial: int
    finals: frozenset[int]
    letter_transitions: tuple[LetterTransition, ...]
    variable_transitions: tuple[tuple[int, int, int], ...]
    variables: tuple[str, ...]


class ExtendedVA(NamedTuple):
    """
    extended VA: ev-transitions carry a (sorted) marker set;
    states in `ev_states` are ev-states, all others are letter-states
    """
    num_states: int
    initial: int
    finals: frozenset[int]
    letter_transitions: tuple[LetterTransition, ...]
    ev_transitions: tuple[tuple[int, Label, int], ...]
    ev_states: frozenset[int]
    variables: tuple[str, ...]


Automaton = VarAutomaton | ExtendedVA


def open_marker(variable: int) -> int:
    return 2 * variable


def close_marker(variable: int) -> int:
    return 2 * variable + 1


def marker_variable(marker: int) -> int:
    return marker >> 1


def is_open(marker: int) -> bool:
    return marker & 1 == 0


def format_marker(marker: int, variables: tuple[str, ...]) -> str:
    """
    format marker as text
    :param marker: marker id
    :type marker: int
    :param variables: variable names
    :type variables: tuple[str, ...]
    :return: `open:x` or `close:x`
    :rtype: str
    """
    kind = "open" if is_open(marker) else "close"
    return f"{kind}:{variables[marker_variable(marker)]}"


def marker_transitions(automaton: Automaton) -> Iterator[tuple[int, Label, int]]:
    """
    iterate over non-letter transitions with marker-set labels
    (singletons for VarAutomaton)
    :param automaton: automaton
    :type automaton: VarAutomaton | ExtendedVA
    :return: (source, label, target) triples
    :rtype: Iterator[tuple[int, tuple[int, ...], int]]
    """
    if isinstance(automaton, ExtendedVA):
        yield from automaton.ev_transitions
    else:
        for source, marker, target in automaton.variable_transitions:
            yield source, (marker,), target


def automaton_size(automaton: Automaton) -> int:
    """ |A|: states plus transitions """
    transitions = len(automaton.letter_transitions) + sum(1 for _ in marker_transitions(automaton))
    return automaton.num_states + transitions


def is_empty(automaton: Automaton) -> bool:
    return automaton.num_states == 0


def trim_va(automaton: Automaton) -> Automaton:
    """
    remove states that are not accessible from the initial state or not co-accessible to a final one;
    states are renumbered densely in their original order
    :param automaton: automaton
    :type automaton: VarAutomaton | ExtendedVA
    :return: trimmed automaton; zero states if the spanner is empty
    :rtype: VarAutomaton | ExtendedVA
    """
    forward: list[set[int]] = [set() for _ in range(automaton.num_states)]
    backward: list[set[int]] = [set() for _ in range(automaton.num_states)]

    edges = [(source, target) for source, _, target in automaton.letter_transitions]
    edges += [(source, target) for source, _, target in marker_transitions(automaton)]
    for source, target in edges:
        forward[source].add(target)
        backward[target].add(source)

    accessible = traverse(forward, {automaton.initial} if automaton.num_states else set())
    coaccessible = traverse(backward, set(automaton.finals))
    keep = sorted(accessible & coaccessible)

    if automaton.num_states and automaton.initial not in keep:
        logger.debug("empty spanner: no accepting run")
        keep = []

    rename = {state: i for i, state in enumerate(keep)}

    letter = tuple((rename[s], cls, rename[t]) for s, cls, t in automaton.letter_transitions
                   if s in rename and t in rename)
    common = {
        "num_states": len(keep),
        "initial": rename.get(automaton.initial, 0),
        "finals": frozenset(rename[q] for q in automaton.finals if q in rename),
        "letter_transitions": letter,
    }

    if isinstance(automaton, ExtendedVA):
        trimmed = automaton._replace(
            ev_transitions=tuple((rename[s], label, rename[t]) for s, label, t in automaton.ev_transitions
                                 if s in rename and t in rename),
            ev_states=frozenset(rename[q] for q in automaton.ev_states if q in rename),
            **common)
    else:
        trimmed = automaton._replace(
            variable_transitions=tuple((rename[s], m, rename[t]) for s, m, t in automaton.variable_transitions
                                       if s in rename and t in rename),
            **common)

    logger.debug("trimmed automaton: %d -> %d states", automaton.num_states, trimmed.num_states)
    return trimmed


def traverse(adjacency: list[set[int]], sources: set[int]) -> set[int]:
    """ breadth-first reachability """
    seen = set(sources)
    queue = deque(sources)
    while queue:
        state = queue.popleft()
        for target in adjacency[state]:
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return seen
