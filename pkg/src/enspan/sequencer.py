"""
sequentiality test & sequentialization of variable-set automata

functions:
    - check_sequential -- test whether every accepting run is valid, with a witness otherwise
    - make_sequential  -- equivalent sequential VA (product with variable statuses)

A run is valid if it reads each marker at most once, opens a variable before
closing it, and ends with no variable left open. Statuses: 0 unseen, 1 open, 2 closed.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from collections import deque

from enspan.automaton import VarAutomaton, trim_va, marker_variable, is_open
from enspan.errors import BudgetError


logger = logging.getLogger(__name__)


STATE_BUDGET = 100_000

UNSEEN, OPEN, CLOSED = 0, 1, 2

Transition = tuple[int, frozenset[int] | int, int]


def advance(status: int, marker: int) -> int | None:
    """
    variable status after reading `marker`
    :param status: current status of the marker's variable
    :type status: int
    :param marker: marker id
    :type marker: int
    :return: new status, None if the marker use is invalid
    :rtype: int | None
    """
    if is_open(marker):
        return OPEN if status == UNSEEN else None
    return CLOSED if status == OPEN else None


def check_sequential(va: VarAutomaton) -> tuple[bool, list[Transition]]:
    """
    check that every accepting run of a trimmed VA is valid;
    validity is checked one variable at a time over (state, status) pairs
    :param va: trimmed automaton
    :type va: VarAutomaton
    :return: verdict & witness transition sequence from the initial state (empty if sequential)
    :rtype: tuple[bool, list[tuple[int, frozenset[int] | int, int]]]
    """
    if va.num_states == 0:
        return True, []

    outgoing: list[list[Transition]] = [[] for _ in range(va.num_states)]
    for transition in va.letter_transitions + va.variable_transitions:
        outgoing[transition[0]].append(transition)

    for variable in range(len(va.variables)):
        witness = find_invalid_run(va, outgoing, variable)
        if witness is not None:
            logger.debug("not sequential in variable %s: %d-step witness",
                         va.variables[variable], len(witness))
            return False, witness

    return True, []


def find_invalid_run(va: VarAutomaton, outgoing: list[list[Transition]], variable: int) -> list[Transition] | None:
    """ breadth-first search for an invalid use of `variable`; returns the witness prefix """
    start = (va.initial, UNSEEN)
    parent: dict[tuple[int, int], tuple[tuple[int, int], Transition] | None] = {start: None}
    queue = deque([start])

    def path_to(node: tuple[int, int]) -> list[Transition]:
        steps = []
        while parent[node] is not None:
            node, transition = parent[node]
            steps.append(transition)
        return steps[::-1]

    while queue:
        node = queue.popleft()
        state, status = node

        for transition in outgoing[state]:
            _, label, target = transition
            following = status
            if isinstance(label, int) and marker_variable(label) == variable:
                following = advance(status, label)
                # trimmed: the invalid prefix extends to an accepting run
                if following is None:
                    return path_to(node) + [transition]
            if (target, following) not in parent:
                parent[(target, following)] = (node, transition)
                queue.append((target, following))

        if state in va.finals and status == OPEN:
            return path_to(node)

    return None


def make_sequential(va: VarAutomaton, *, budget: int = STATE_BUDGET) -> VarAutomaton:
    """
    build an equivalent sequential VA: product of `va` with per-variable statuses,
    dropping invalid marker uses; finals have no variable open
    :param va: trimmed automaton
    :type va: VarAutomaton
    :param budget: maximum allowed 3^k·|Q|
    :type budget: int
    :return: trimmed sequential automaton with at most 3^k·|Q| states
    :rtype: VarAutomaton
    :raises BudgetError: if 3^k·|Q| exceeds the budget
    """
    required = 3 ** len(va.variables) * va.num_states
    if required > budget:
        raise BudgetError("state budget exceeded", required)

    if va.num_states == 0:
        return va

    outgoing_letters: list[list[tuple[frozenset[int], int]]] = [[] for _ in range(va.num_states)]
    outgoing_markers: list[list[tuple[int, int]]] = [[] for _ in range(va.num_states)]
    for source, cls, target in va.letter_transitions:
        outgoing_letters[source].append((cls, target))
    for source, marker, target in va.variable_transitions:
        outgoing_markers[source].append((marker, target))

    # statuses encoded in base 3, digit v for variable v
    states = {(va.initial, 0): 0}
    queue = deque([(va.initial, 0)])
    letter_transitions = []
    variable_transitions = []

    def visit(node: tuple[int, int]) -> int:
        if node not in states:
            states[node] = len(states)
            queue.append(node)
        return states[node]

    while queue:
        node = queue.popleft()
        state, code = node
        source = states[node]

        for cls, target in outgoing_letters[state]:
            letter_transitions.append((source, cls, visit((target, code))))

        for marker, target in outgoing_markers[state]:
            weight = 3 ** marker_variable(marker)
            status = advance(code // weight % 3, marker)
            if status is None:
                continue
            # unseen -> open -> closed adds one to the digit
            variable_transitions.append((source, marker, visit((target, code + weight))))

    finals = frozenset(index for (state, code), index in states.items()
                       if state in va.finals and not has_open(code, len(va.variables)))

    product = VarAutomaton(num_states=len(states),
                           initial=0,
                           finals=finals,
                           letter_transitions=tuple(letter_transitions),
                           variable_transitions=tuple(variable_transitions),
                           variables=va.variables)

    logger.debug("sequentialized VA: %d -> %d states (bound %d)", va.num_states, len(states), required)
    return trim_va(product)


def has_open(code: int, width: int) -> bool:
    """ True if some base-3 digit of `code` is OPEN """
    for _ in range(width):
        if code % 3 == OPEN:
            return True
        code //= 3
    return False
