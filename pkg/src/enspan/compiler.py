"""
regex-formula compilation into variable-set automata (Glushkov construction)

functions:
    - compile_to_va -- compile a RegexFormula into a VarAutomaton
    - compile_node  -- compile a bare AST node

    - glushkov     -- compute (first, last, nullable) of a node, allocating positions
    - link         -- add follow edges from a set of positions to another

Each letter position and each capture boundary (marker) becomes a state;
state 0 is the initial state and position p is state p + 1. A transition into
state p + 1 reads the symbol of position p. Position sets are int bitsets.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from enspan.automaton import VarAutomaton, open_marker, close_marker
from enspan.parser import (RegexFormula, Node, Literal, AnyChar, CharClass, Concat, Union,
                           Star, Plus, Optional, Counter, Capture, Epsilon, ALL_BYTES, NEWLINE)
from enspan.utils import iter_bits


logger = logging.getLogger(__name__)


DOT = ALL_BYTES - {NEWLINE}

Fragment = tuple[int, int, bool]  # first, last, nullable


def compile_to_va(formula: RegexFormula) -> VarAutomaton:
    """
    compile formula (with its Σ* wrapping) into a VA
    :param formula: parsed formula
    :type formula: RegexFormula
    :return: automaton (not trimmed)
    :rtype: VarAutomaton
    """
    return compile_node(formula.root, formula.variables)


def compile_node(node: Node, variables: tuple[str, ...] = ()) -> VarAutomaton:
    """
    compile an AST node as is (no wrapping)
    :param node: AST node
    :type node: Node
    :param variables: variable names of the captures in `node`
    :type variables: tuple[str, ...]
    :return: automaton (not trimmed)
    :rtype: VarAutomaton
    """
    symbols: list[tuple[str, frozenset[int] | int]] = []
    follow: list[int] = []

    first, last, nullable = glushkov(node, symbols, follow)

    letter_transitions = []
    variable_transitions = []
    for source, targets in [(0, first)] + [(p + 1, mask) for p, mask in enumerate(follow)]:
        for position in iter_bits(targets):
            kind, value = symbols[position]
            if kind == "letter":
                letter_transitions.append((source, value, position + 1))
            else:
                variable_transitions.append((source, value, position + 1))

    finals = {position + 1 for position in iter_bits(last)} | ({0} if nullable else set())

    va = VarAutomaton(num_states=len(symbols) + 1,
                      initial=0,
                      finals=frozenset(finals),
                      letter_transitions=tuple(letter_transitions),
                      variable_transitions=tuple(variable_transitions),
                      variables=variables)

    logger.debug("compiled VA: %d states, %d letter & %d variable transitions",
                 va.num_states, len(letter_transitions), len(variable_transitions))
    return va


def glushkov(node: Node, symbols: list, follow: list[int]) -> Fragment:
    """
    compute Glushkov sets of a node; new positions are appended to `symbols` & `follow`
    :param node: AST node
    :type node: Node
    :param symbols: position symbols ("letter", byte-set) or ("marker", marker-id)
    :type symbols: list
    :param follow: follow bitset per position
    :type follow: list[int]
    :return: first, last, nullable
    :rtype: tuple[int, int, bool]
    """
    match node:
        case Epsilon():
            return 0, 0, True
        case Literal(byte=byte):
            return position(symbols, follow, ("letter", frozenset({byte})))
        case AnyChar():
            return position(symbols, follow, ("letter", DOT))
        case CharClass(members=members):
            return position(symbols, follow, ("letter", members))
        case Concat(items=items):
            return concat([glushkov(item, symbols, follow) for item in items], follow)
        case Union(items=items):
            first, last, nullable = 0, 0, False
            for item in items:
                f, l, n = glushkov(item, symbols, follow)
                first, last, nullable = first | f, last | l, nullable or n
            return first, last, nullable
        case Star(child=child):
            first, last, _ = glushkov(child, symbols, follow)
            link(follow, last, first)
            return first, last, True
        case Plus(child=child):
            first, last, nullable = glushkov(child, symbols, follow)
            link(follow, last, first)
            return first, last, nullable
        case Optional(child=child):
            first, last, _ = glushkov(child, symbols, follow)
            return first, last, True
        case Counter(child=child, min=low, max=high):
            return counter(child, low, high, symbols, follow)
        case Capture(variable=variable, child=child):
            opening = position(symbols, follow, ("marker", open_marker(variable)))
            body = glushkov(child, symbols, follow)
            closing = position(symbols, follow, ("marker", close_marker(variable)))
            return concat([opening, body, closing], follow)

    raise ValueError(f"unsupported node: {node!r}")


def position(symbols: list, follow: list[int], symbol: tuple) -> Fragment:
    """ allocate a new position """
    symbols.append(symbol)
    follow.append(0)
    bit = 1 << (len(symbols) - 1)
    return bit, bit, False


def link(follow: list[int], sources: int, targets: int) -> None:
    """ add `targets` to the follow set of every position in `sources` """
    for source in iter_bits(sources):
        follow[source] |= targets


def concat(fragments: list[Fragment], follow: list[int]) -> Fragment:
    """ concatenate fragments """
    first, last, nullable = 0, 0, True
    for f, l, n in fragments:
        link(follow, last, f)
        if nullable:
            first |= f
        last = l | (last if n else 0)
        nullable = nullable and n
    return first, last, nullable


def counter(child: Node, low: int, high: int, symbols: list, follow: list[int]) -> Fragment:
    """
    expand child{low,high} by duplication: low mandatory copies,
    then (high - low) nested optional copies `(c (c (c)?)?)?`
    """
    copies = [glushkov(child, symbols, follow) for _ in range(high)]

    mandatory = concat(copies[:low], follow)

    # nested optional tail, built right to left
    tail: Fragment = (0, 0, True)
    for f, l, n in reversed(copies[low:]):
        link(follow, l, tail[0])
        tail = (f | (tail[0] if n else 0), l | tail[1], True)

    return concat([mandatory, tail], follow)
