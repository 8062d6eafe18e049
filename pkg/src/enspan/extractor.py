"""
end-to-end extraction pipeline

functions:
    - compile_pattern  -- pattern text -> trimmed sequential VA
    - preprocess       -- VA & document -> (trimmed) DAG & jump index
    - extract          -- stream the mappings of a pattern over a document with a chosen engine
    - extract_compiled -- `extract` for a pattern compiled by `compile_pattern`

engines:
    - general  -- product DAG of the VA, flashlight enumeration (default)
    - extended -- product DAG of the extended VA, k-way merge enumeration
    - naive    -- NFA run from every position (single capture around the whole pattern only)
    - oracle   -- exhaustive run enumeration (small inputs only), sorted
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from collections.abc import Iterator

from enspan.automaton import VarAutomaton, automaton_size, is_empty, trim_va
from enspan.builder import MappingDag, build_product_dag, build_product_dag_extended, trim_dag
from enspan.compiler import compile_to_va
from enspan.enumerator import Mapping, Probe, enumerate_mappings
from enspan.extender import EXTENSION_BUDGET, to_extended_va
from enspan.jumper import JumpIndex, build_index
from enspan.oracle import ORACLE_BUDGET, naive_scan_enumerate, oracle_enumerate
from enspan.parser import RegexFormula, parse_regex_formula
from enspan.sequencer import STATE_BUDGET, check_sequential, make_sequential


logger = logging.getLogger(__name__)


ENGINES = ("general", "extended", "naive", "oracle")


def compile_pattern(pattern: str | bytes, *, budget: int = STATE_BUDGET) -> tuple[RegexFormula, VarAutomaton]:
    """
    parse & compile a pattern; sequentialize the automaton if needed
    :param pattern: regex-formula
    :type pattern: str | bytes
    :param budget: state budget of sequentialization
    :type budget: int
    :return: formula & trimmed sequential VA
    :rtype: tuple[RegexFormula, VarAutomaton]
    :raises PatternError: on syntax errors
    :raises BudgetError: if sequentialization exceeds the budget
    """
    formula = parse_regex_formula(pattern)
    va = trim_va(compile_to_va(formula))

    sequential, witness = check_sequential(va)
    if not sequential:
        logger.warning("pattern is not sequential (%d-step witness); sequentializing", len(witness))
        va = make_sequential(va, budget=budget)

    if is_empty(va):
        logger.warning("empty spanner: the pattern has no valid match on any document")
        return formula, va

    logger.debug("pattern compiled: %d states, size %d, variables %s",
                 va.num_states, automaton_size(va), ",".join(va.variables))
    return formula, va


def preprocess(va: VarAutomaton,
               doc: bytes,
               variant: str = "general",
               *,
               trim: bool = True,
               budget: int = EXTENSION_BUDGET
               ) -> tuple[MappingDag, JumpIndex | None]:
    """
    build the product DAG and (for trimmed DAGs) its jump index
    :param va: trimmed sequential VA
    :type va: VarAutomaton
    :param doc: document
    :type doc: bytes
    :param variant: "general" or "extended"
    :type variant: str
    :param trim: run the backward trimming pass, defaults to True
    :type trim: bool, optional
    :param budget: ev-transition budget of the extended variant
    :type budget: int
    :return: DAG & index (None if not trimmed)
    :rtype: tuple[MappingDag, JumpIndex | None]
    """
    if variant == "extended":
        dag = build_product_dag_extended(to_extended_va(va, budget=budget), doc)
    elif variant == "general":
        dag = build_product_dag(va, doc)
    else:
        raise ValueError(f"unsupported variant: {variant}")

    if not trim:
        return dag, None

    dag = trim_dag(dag)
    return dag, build_index(dag)


def extract(pattern: str | bytes,
            doc: bytes,
            engine: str = "general",
            *,
            probe: Probe | None = None,
            budget: int = ORACLE_BUDGET
            ) -> Iterator[Mapping]:
    """
    compile & preprocess eagerly (errors surface here), then stream the mappings
    :param pattern: regex-formula
    :type pattern: str | bytes
    :param doc: document
    :type doc: bytes
    :param engine: one of ENGINES
    :type engine: str
    :param probe: instrumentation of the general & extended engines
    :type probe: Probe, optional
    :param budget: oracle budget
    :type budget: int
    :return: mappings
    :rtype: Iterator[tuple[tuple[int, int], ...]]
    :raises EngineError: if the naive engine is given an unsupported pattern
    """
    if engine not in ENGINES:
        raise ValueError(f"unsupported engine: {engine}")

    formula, va = compile_pattern(pattern)
    return extract_compiled(formula, va, doc, engine, probe=probe, budget=budget)


def extract_compiled(formula: RegexFormula,
                     va: VarAutomaton,
                     doc: bytes,
                     engine: str = "general",
                     *,
                     probe: Probe | None = None,
                     budget: int = ORACLE_BUDGET
                     ) -> Iterator[Mapping]:
    """
    stream the mappings of an already compiled pattern (see `compile_pattern`)
    :param formula: parsed formula
    :type formula: RegexFormula
    :param va: trimmed sequential VA of the formula
    :type va: VarAutomaton
    :param doc: document
    :type doc: bytes
    :param engine: one of ENGINES
    :type engine: str
    :return: mappings
    :rtype: Iterator[tuple[tuple[int, int], ...]]
    """
    if engine not in ENGINES:
        raise ValueError(f"unsupported engine: {engine}")

    if engine == "naive":
        return naive_scan_enumerate(formula, doc)
    if engine == "oracle":
        return iter(sorted(oracle_enumerate(va, doc, budget=budget)))

    dag, index = preprocess(va, doc, engine)
    return enumerate_mappings(dag, index, engine, probe=probe)
