"""
DAG & index statistics

functions:
    - dag_stats -- compute width, complete width, alphabet size & depth of a DAG
    - stats     -- print automaton, DAG & index stats as YAML

    - collect_stats -- stats as a plain dict
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


from typing import NamedTuple

import yaml

from enspan.automaton import automaton_size
from enspan.builder import MappingDag, eps_targets, sorted_marker_edges
from enspan.jumper import JumpIndex, index_size
from enspan.utils import iter_bits


class DagStats(NamedTuple):
    width: int
    complete_width: int
    alphabet_size: int
    depth: int


def dag_stats(dag: MappingDag) -> DagStats:
    """
    compute DAG stats over present vertices & derived edges:
    W (max vertices per level), W_c (max vertices + outgoing edges per level),
    B (max distinct non-empty labels on marker edges per level;
    single markers for VAs, marker sets for extended VAs), D (depth)
    :param dag: trimmed DAG
    :type dag: MappingDag
    :return: stats
    :rtype: DagStats
    """
    width = 0 if dag.empty else 1  # v_f level
    complete_width = alphabet_size = 0

    for level, mask in enumerate(dag.levels):
        edges = 0
        labels = set()
        for state in iter_bits(mask):
            for label, _ in sorted_marker_edges(dag, level, state):
                edges += 1
                if label:
                    labels.add(label)
            edges += eps_targets(dag, level, 1 << state).bit_count()

        width = max(width, mask.bit_count())
        complete_width = max(complete_width, mask.bit_count() + edges)
        alphabet_size = max(alphabet_size, len(labels))

    return DagStats(width, complete_width, alphabet_size, dag.depth)


def collect_stats(dag: MappingDag, index: JumpIndex | None = None) -> dict:
    """
    collect automaton, DAG & index stats
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param index: jump index
    :type index: JumpIndex, optional
    :return: nested stats
    :rtype: dict
    """
    automaton = dag.tables.automaton
    report = {
        "automaton": {
            "states": automaton.num_states,
            "size": automaton_size(automaton),
            "variables": list(automaton.variables),
            "extended": dag.tables.extended,
        },
        "document": {"bytes": len(dag.document)},
        "dag": dict(dag_stats(dag)._asdict()),
    }

    if index is not None:
        report["index"] = dict(zip(["dag_bytes", "jump_bytes", "matrix_bytes"], index_size(dag, index)))
        report["index"]["matrices"] = len(index.reach)

    return report


def stats(dag: MappingDag, index: JumpIndex | None = None) -> None:
    """
    print stats as YAML
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param index: jump index
    :type index: JumpIndex, optional
    """
    print(yaml.safe_dump(collect_stats(dag, index), sort_keys=False), end="")
