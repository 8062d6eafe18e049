"""
conversion of sequential VAs into normalized extended VAs

functions:
    - to_extended_va    -- collapse variable-transition chains into ev-transitions
    - check_alternation -- assert the ev-state/letter-state normalization

Every state q yields an ev-state q and a letter-state |Q| + q. Each chain of
variable transitions q -> ... -> q' (including the empty chain) becomes an
ev-transition (q, M, |Q| + q') labeled with the chain's marker set M.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from enspan.automaton import VarAutomaton, ExtendedVA, trim_va
from enspan.errors import BudgetError


logger = logging.getLogger(__name__)


EXTENSION_BUDGET = 1_000_000


def to_extended_va(va: VarAutomaton, *, budget: int = EXTENSION_BUDGET) -> ExtendedVA:
    """
    convert a sequential trimmed VA into an equivalent normalized extended VA
    :param va: sequential trimmed automaton
    :type va: VarAutomaton
    :param budget: maximum number of explored marker chains
    :type budget: int
    :return: trimmed extended automaton
    :rtype: ExtendedVA
    :raises BudgetError: if the chain count exceeds the budget
    """
    size = va.num_states

    chains: list[list[tuple[int, int]]] = [[] for _ in range(size)]
    for source, marker, target in va.variable_transitions:
        chains[source].append((marker, target))

    ev_transitions = set()
    explored = 0

    for state in range(size):
        # depth-first over marker chains; acyclic for sequential trimmed VAs
        stack = [(state, ())]
        while stack:
            current, markers = stack.pop()
            explored += 1
            if explored > budget:
                raise BudgetError("extension budget exceeded", explored)
            ev_transitions.add((state, tuple(sorted(markers)), size + current))
            for marker, target in chains[current]:
                assert marker not in markers, "repeated marker on a chain: VA not sequential"
                stack.append((target, markers + (marker,)))

    letter_transitions = tuple((size + source, cls, target) for source, cls, target in va.letter_transitions)

    eva = ExtendedVA(num_states=2 * size,
                     initial=va.initial,
                     finals=frozenset(size + q for q in va.finals),
                     letter_transitions=letter_transitions,
                     ev_transitions=tuple(sorted(ev_transitions)),
                     ev_states=frozenset(range(size)),
                     variables=va.variables)

    logger.debug("extended VA: %d ev-transitions from %d chains", len(ev_transitions), explored)
    eva = trim_va(eva)
    check_alternation(eva)
    return eva


def check_alternation(eva: ExtendedVA) -> None:
    """
    assert ev/letter normalization: only ev-transitions leave ev-states,
    only letter transitions leave letter-states, initial is an ev-state, finals are letter-states
    :param eva: extended automaton
    :type eva: ExtendedVA
    :raises ValueError: if the automaton is not normalized
    """
    if eva.num_states == 0:
        return

    if eva.initial not in eva.ev_states:
        raise ValueError("initial state is not an ev-state")
    if eva.finals & eva.ev_states:
        raise ValueError("final ev-state")
    if any(source not in eva.ev_states or target in eva.ev_states for source, _, target in eva.ev_transitions):
        raise ValueError("ev-transition not from an ev-state to a letter-state")
    if any(source in eva.ev_states or target not in eva.ev_states for source, _, target in eva.letter_transitions):
        raise ValueError("letter transition not from a letter-state to an ev-state")
