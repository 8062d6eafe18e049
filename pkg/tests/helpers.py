""" enspan test helpers: hypothesis strategies & exhaustive reference checks """

import itertools
import re

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from enspan.automaton import VarAutomaton, trim_va
from enspan.enumerator import LevelGraph
from enspan.sequencer import make_sequential


ALPHABET = b"ab"

# seeded & reproducible randomized checks
RANDOMIZED = settings(derandomize=True,
                      deadline=None,
                      suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])


documents = st.lists(st.sampled_from(ALPHABET), max_size=10).map(bytes)


@st.composite
def automata(draw, max_states: int = 8, max_variables: int = 3) -> VarAutomaton:
    """ random (generally non-sequential) VA over {a, b} """
    num_states = draw(st.integers(1, max_states))
    num_variables = draw(st.integers(0, max_variables))

    state = st.integers(0, num_states - 1)
    classes = st.sampled_from([frozenset({byte}) for byte in ALPHABET] + [frozenset(ALPHABET)])

    letters = draw(st.lists(st.tuples(state, classes, state), max_size=3 * num_states, unique=True))
    markers = []
    if num_variables:
        markers = draw(st.lists(st.tuples(state, st.integers(0, 2 * num_variables - 1), state),
                                max_size=2 * num_states, unique=True))
    finals = draw(st.frozensets(state, min_size=1))

    return VarAutomaton(num_states=num_states,
                        initial=0,
                        finals=finals,
                        letter_transitions=tuple(letters),
                        variable_transitions=tuple(markers),
                        variables=tuple("xyz"[:num_variables]))


sequential_automata = automata().map(lambda va: make_sequential(trim_va(va)))


def name_captures(pattern: str) -> str:
    """ replace capture placeholders by unique variable names """
    counter = itertools.count()
    return re.sub("\0", lambda _: f"v{next(counter)}", pattern)


# patterns over {a, b}; "\0{...}" is a capture placeholder
patterns = st.recursive(
    st.sampled_from(["a", "b", ".", "[ab]", "[^a]", ""]),
    lambda children: st.one_of(
        st.tuples(children, children).map("".join),
        st.tuples(children, children).map(lambda pair: f"({pair[0]}|{pair[1]})"),
        children.map(lambda text: f"({text})*"),
        children.map(lambda text: f"({text})+"),
        children.map(lambda text: f"({text})?"),
        children.map(lambda text: f"({text}){{1,2}}"),
        children.map(lambda text: f"(\0{{{text}}})"),
    ),
    max_leaves=6,
).map(name_captures)


@st.composite
def level_graphs(draw, max_vertices: int = 7, max_labels: int = 4) -> tuple[LevelGraph, int, int, int]:
    """
    random one-level marker graph (no label repeats on a path) with a source set
    and disjoint required/forbidden label sets
    :return: graph, source bitset, S+ bitset, S- bitset
    """
    size = draw(st.integers(1, max_vertices))
    candidates = [(u, v) for u in range(size) for v in range(u + 1, size)]
    chosen = draw(st.lists(st.sampled_from(candidates), unique=True)) if candidates else []
    labels = draw(st.lists(st.integers(0, max_labels - 1), min_size=len(chosen), max_size=len(chosen)))

    # keep an edge only if its label is not seen on any path into its source
    into = [0] * size
    incoming: dict[int, list[tuple[int, int]]] = {v: [] for v in range(size)}
    for (u, v), label in sorted(zip(chosen, labels)):
        if into[u] >> label & 1:
            continue
        incoming[v].append((u, label))
        into[v] |= into[u] | 1 << label

    # random topological numbering
    names = draw(st.permutations(range(size)))
    graph = LevelGraph(order=tuple(names[v] for v in range(size)),
                       incoming={names[v]: tuple((names[u], label) for u, label in incoming[v])
                                 for v in range(size)})

    sources = draw(st.integers(1, (1 << size) - 1))
    sources = sum(1 << names[v] for v in range(size) if sources >> v & 1)
    labels_all = (1 << max_labels) - 1
    s_plus = draw(st.integers(0, labels_all))
    s_minus = draw(st.integers(0, labels_all)) & ~s_plus

    return graph, sources, s_plus, s_minus


def exhaustive_closure(graph: LevelGraph, sources: int, s_plus: int, s_minus: int) -> int:
    """ vertices at the end of a path from `sources` whose labels include S+ and avoid S- """
    outgoing: dict[int, list[tuple[int, int]]] = {v: [] for v in graph.order}
    for v, edges in graph.incoming.items():
        for u, label in edges:
            outgoing[u].append((v, label))

    result = 0
    stack = [(v, 0) for v in graph.order if sources >> v & 1]
    while stack:
        vertex, seen = stack.pop()
        if seen & s_plus == s_plus:
            result |= 1 << vertex
        for target, label in outgoing[vertex]:
            if not s_minus >> label & 1:
                stack.append((target, seen | 1 << label))
    return result


def accepts_invalid_run(va: VarAutomaton) -> bool:
    """
    exhaustive search over (state, statuses of all variables) of a trimmed VA
    for an accepting run that reuses a marker, closes before opening, or ends with a variable open
    """
    transitions = list(va.letter_transitions) + list(va.variable_transitions)
    start = (va.initial, (0,) * len(va.variables))
    seen = {start}
    stack = [start]

    while stack:
        state, statuses = stack.pop()
        if state in va.finals and 1 in statuses:
            return True

        for source, label, target in transitions:
            if source != state:
                continue
            following = statuses
            if isinstance(label, int):
                variable = label >> 1
                # trimmed: an invalid prefix extends to an accepting run
                if statuses[variable] != label & 1:
                    return True
                following = statuses[:variable] + (statuses[variable] + 1,) + statuses[variable + 1:]
            if (target, following) not in seen:
                seen.add((target, following))
                stack.append((target, following))

    return False


def is_invalid_witness(va: VarAutomaton, witness: list) -> bool:
    """ witness is a transition path from the initial state showing an invalid marker use """
    transitions = set(va.letter_transitions) | set(va.variable_transitions)
    if not witness or witness[0][0] != va.initial or not set(witness) <= transitions:
        return False
    if any(previous[2] != current[0] for previous, current in zip(witness, witness[1:])):
        return False

    statuses = [0] * len(va.variables)
    for _, label, _ in witness:
        if isinstance(label, int):
            if statuses[label >> 1] != label & 1:
                return True
            statuses[label >> 1] += 1
    return witness[-1][2] in va.finals and 1 in statuses
