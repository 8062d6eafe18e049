"""
delay measurement & benchmark reports

functions:
    - measure_delays -- per-result delays over repeated runs, median per result index
    - emit_histogram -- bucketed delay counts
    - bench          -- preprocessing time, delays & index sizes of one pattern/document pair

Delays are measured with a monotonic nanosecond clock between successive
iterator returns (the first delay counts from the start of enumeration).
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging
import time

from collections.abc import Callable, Iterable, Iterator
from typing import NamedTuple

import numpy as np

from enspan.enumerator import enumerate_mappings
from enspan.errors import EngineError
from enspan.extractor import compile_pattern, preprocess
from enspan.jumper import index_size


logger = logging.getLogger(__name__)


REPORT_FIELDS = ["doc_bytes", "pattern", "preproc_ms", "results", "avg_delay_ns", "max_delay_ns",
                 "dag_bytes", "jump_bytes", "matrix_bytes"]


class DelayProfile(NamedTuple):
    delays: tuple[int, ...]  # median ns per result index
    runs: int
    preprocessing: int = 0  # median ns


class BenchReport(NamedTuple):
    doc_bytes: int
    pattern: str
    preproc_ms: float
    results: int
    avg_delay_ns: float
    max_delay_ns: int
    dag_bytes: int
    jump_bytes: int
    matrix_bytes: int


def time_run(results: Iterable) -> tuple[list[int], list]:
    """ delays between successive returns of an iterator & the returned items """
    delays, items = [], []
    iterator = iter(results)
    last = time.perf_counter_ns()
    for item in iterator:
        now = time.perf_counter_ns()
        delays.append(now - last)
        items.append(item)
        last = time.perf_counter_ns()
    return delays, items


def measure_delays(run: Callable[[], Iterator], runs: int = 10, *, prepare: Callable[[], object] | None = None
                   ) -> DelayProfile:
    """
    time `runs` repetitions of an enumeration; per result index keep the median delay
    :param run: returns a fresh result iterator
    :type run: Callable[[], Iterator]
    :param runs: number of repetitions
    :type runs: int
    :param prepare: preprocessing step timed separately before every repetition
    :type prepare: Callable[[], object], optional
    :return: profile
    :rtype: DelayProfile
    :raises EngineError: if the result order differs between repetitions
    """
    if runs < 1:
        raise ValueError(f"runs must be positive: {runs}")

    reference = None
    delays, preprocessing = [], []

    for _ in range(runs):
        if prepare is not None:
            start = time.perf_counter_ns()
            prepare()
            preprocessing.append(time.perf_counter_ns() - start)

        times, items = time_run(run())
        if reference is None:
            reference = items
        elif items != reference:
            raise EngineError("result order differs between runs")
        delays.append(times)

    medians = np.median(np.array(delays, dtype=np.int64), axis=0) if reference else np.array([])
    return DelayProfile(tuple(int(value) for value in medians),
                        runs,
                        int(np.median(preprocessing)) if preprocessing else 0)


def emit_histogram(profile: DelayProfile, bucket_width: int) -> list[tuple[int, int]]:
    """
    bucket the delays of a profile; buckets are aligned to multiples of the width
    and cover [min, max] (empty buckets inside the range included)
    :param profile: profile
    :type profile: DelayProfile
    :param bucket_width: bucket width in ns
    :type bucket_width: int
    :return: (bucket lower bound ns, count) rows
    :rtype: list[tuple[int, int]]
    """
    if bucket_width <= 0:
        raise ValueError(f"bucket width must be positive: {bucket_width}")
    if not profile.delays:
        return []

    buckets = np.array(profile.delays, dtype=np.int64) // bucket_width
    low = int(buckets.min())
    counts = np.bincount(buckets - low)
    return [((low + offset) * bucket_width, int(count)) for offset, count in enumerate(counts)]


def bench(pattern: str, doc: bytes, runs: int = 10, variant: str = "general") -> tuple[BenchReport, DelayProfile]:
    """
    benchmark one pattern over one document: preprocessing once per repetition,
    enumeration `runs` times
    :param pattern: regex-formula
    :type pattern: str
    :param doc: document
    :type doc: bytes
    :param runs: repetitions
    :type runs: int
    :param variant: "general" or "extended"
    :type variant: str
    :return: report & profile
    :rtype: tuple[BenchReport, DelayProfile]
    """
    _, va = compile_pattern(pattern)
    prepared = []

    def prepare() -> None:
        prepared[:] = [preprocess(va, doc, variant)]

    def run() -> Iterator:
        dag, index = prepared[0]
        return enumerate_mappings(dag, index, variant)

    profile = measure_delays(run, runs, prepare=prepare)
    dag, index = prepared[0]
    sizes = index_size(dag, index)

    delays = profile.delays
    report = BenchReport(len(doc),
                         pattern,
                         round(profile.preprocessing / 1e6, 3),
                         len(delays),
                         round(float(np.mean(delays)), 1) if delays else 0.0,
                         max(delays, default=0),
                         *sizes)

    logger.info("bench: %d bytes, %d results, preprocessing %.3f ms", len(doc), len(delays), report.preproc_ms)
    return report, profile
