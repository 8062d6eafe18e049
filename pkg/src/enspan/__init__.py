""" enspan public functions """

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


from enspan.parser import parse_regex_formula, unparse
from enspan.compiler import compile_to_va
from enspan.automaton import trim_va
from enspan.sequencer import check_sequential, make_sequential
from enspan.extender import to_extended_va
from enspan.builder import build_product_dag, build_product_dag_extended, trim_dag, format_dag
from enspan.stats import dag_stats, stats
from enspan.matrix import bool_matrix_multiply
from enspan.jumper import (compute_jump_levels, compute_reachable_levels, compute_reach_matrices,
                           build_index, jump, index_size)
from enspan.enumerator import (enumerate_mappings, next_level_extended, next_level_flashlight,
                               spath_closure, emit_mapping)
from enspan.extractor import compile_pattern, preprocess, extract, extract_compiled
from enspan.oracle import oracle_enumerate, naive_scan_enumerate
from enspan.bencher import measure_delays, emit_histogram, bench
from enspan.reader import load, dump


__all__ = [
    # parser
    'parse_regex_formula', 'unparse',
    # compiler
    'compile_to_va',
    # automaton
    'trim_va',
    # sequencer
    'check_sequential', 'make_sequential',
    # extender
    'to_extended_va',
    # builder
    'build_product_dag', 'build_product_dag_extended', 'trim_dag', 'format_dag',
    # stats
    'dag_stats', 'stats',
    # matrix
    'bool_matrix_multiply',
    # jumper
    'compute_jump_levels', 'compute_reachable_levels', 'compute_reach_matrices',
    'build_index', 'jump', 'index_size',
    # enumerator
    'enumerate_mappings', 'next_level_extended', 'next_level_flashlight',
    'spath_closure', 'emit_mapping',
    # extractor
    'compile_pattern', 'preprocess', 'extract', 'extract_compiled',
    # oracle
    'oracle_enumerate', 'naive_scan_enumerate',
    # bencher
    'measure_delays', 'emit_histogram', 'bench',
    # reader
    'load', 'dump'
]
