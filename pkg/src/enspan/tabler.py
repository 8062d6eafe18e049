"""
record formatting

functions:
    - format_mapping   -- format a mapping in one of FORMATS
    - format_spans     -- `x:[i,j)` spans, variables by id
    - format_pairs     -- raw `(marker,position)` pairs
    - format_jsonl     -- JSON object of spans
    - format_report    -- BenchReport CSV (header & row)
    - format_histogram -- histogram CSV (header & rows)

    - get_spans -- variable -> (start, end) of a mapping

shared params:
    - variables -- variable names by id
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import csv
import io
import json

from enspan.automaton import format_marker, is_open, marker_variable
from enspan.bencher import REPORT_FIELDS, BenchReport


FORMATS = ("spans", "pairs", "jsonl")

Mapping = tuple[tuple[int, int], ...]


def get_spans(mapping: Mapping) -> dict[int, tuple[int, int]]:
    """
    spans of the variables assigned by a mapping, by ascending variable id
    :param mapping: (marker, position) pairs
    :type mapping: tuple[tuple[int, int], ...]
    :return: variable id -> (start, end)
    :rtype: dict[int, tuple[int, int]]
    """
    bounds: dict[int, list[int]] = {}
    for marker, position in mapping:
        bounds.setdefault(marker_variable(marker), [0, 0])[0 if is_open(marker) else 1] = position
    return {variable: (start, end) for variable, (start, end) in sorted(bounds.items())}


def format_spans(mapping: Mapping, variables: tuple[str, ...]) -> str:
    """ `x:[2,5) y:[6,9)`; unassigned variables omitted """
    return " ".join(f"{variables[variable]}:[{start},{end})" for variable, (start, end) in get_spans(mapping).items())


def format_pairs(mapping: Mapping, variables: tuple[str, ...]) -> str:
    """ `(open:x,2) (close:x,5)` """
    return " ".join(f"({format_marker(marker, variables)},{position})" for marker, position in mapping)


def format_jsonl(mapping: Mapping, variables: tuple[str, ...]) -> str:
    """ `{"x": [2, 5]}` """
    return json.dumps({variables[variable]: list(span) for variable, span in get_spans(mapping).items()})


def format_mapping(mapping: Mapping, variables: tuple[str, ...], kind: str = "spans") -> str:
    """
    format mapping as a single-line record
    :param mapping: mapping
    :type mapping: tuple[tuple[int, int], ...]
    :param variables: variable names by id
    :type variables: tuple[str, ...]
    :param kind: one of FORMATS, defaults to "spans"
    :type kind: str, optional
    :return: record
    :rtype: str
    """
    formatters = {"spans": format_spans, "pairs": format_pairs, "jsonl": format_jsonl}
    if kind not in formatters:
        raise ValueError(f"unsupported format: {kind}")
    return formatters[kind](mapping, variables)


def to_csv(rows: list[list]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def format_report(report: BenchReport, header: bool = True) -> str:
    """ report as CSV with an optional header line """
    return to_csv(([REPORT_FIELDS] if header else []) + [list(report)])


def format_histogram(rows: list[tuple[int, int]]) -> str:
    """ histogram as CSV: `bucket_lower_ns,count` """
    return to_csv([["bucket_lower_ns", "count"]] + [list(row) for row in rows])
