""" enspan Command-Line Interface (CLI) """

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import argparse
import logging
import sys

from collections import deque
from collections.abc import Iterator
from itertools import islice

from enspan.bencher import bench, emit_histogram
from enspan.builder import format_dag
from enspan.errors import BudgetError, EngineError, PatternError
from enspan.extractor import ENGINES, compile_pattern, extract_compiled, preprocess
from enspan.oracle import oracle_enumerate
from enspan.reader import load, dump, stream
from enspan.stats import stats
from enspan.tabler import FORMATS, format_histogram, format_mapping, format_report
from enspan.utils import synth


logger = logging.getLogger("enspan")


EXIT_PATTERN, EXIT_IO, EXIT_ENGINE, EXIT_VERIFY = 1, 2, 3, 4


def positive(value: str) -> int:
    """ argparse type: positive integer """
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {value}")
    return number


def non_negative(value: str) -> int:
    """ argparse type: non-negative integer """
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer: {value}")
    return number


def create_argument_parser() -> argparse.ArgumentParser:
    """
    create CLI argument parser
    :return: CLI argument parser
    :rtype: argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(description="enspan: Constant-Delay Span Extraction", prog="enspan")

    # add command
    parser.add_argument("command", nargs="?",
                        choices=["extract", "stat"],
                        default="extract",
                        help="task to perform")

    parser.add_argument("-v", "--verbose", action="count", default=0, help="increase log verbosity")

    # add arguments
    add_argument_group_io(parser)
    add_argument_group_en(parser)
    add_argument_group_of(parser)
    add_argument_group_bm(parser)

    return parser


def add_argument_group_io(parser: argparse.ArgumentParser) -> None:
    """
    add input arguments to argument parser
    :param parser: CLI argument parser
    :type parser: argparse.ArgumentParser
    """
    argument_group = parser.add_argument_group("I/O Arguments")
    argument_group.add_argument("-e", "--pattern",
                                required=True,
                                help="regex-formula, e.g. 'x{[^@ ]+@[^@ ]+}'")

    argument_group.add_argument("-f", "--file",
                                default="-",
                                help="path to document (standard input by default)")

    argument_group.add_argument("--synth", type=positive, metavar="BYTES",
                                help="use a synthetic DNA-like document of BYTES bytes instead")
    argument_group.add_argument("--seed", type=int, default=0, help="synthetic document seed")


def add_argument_group_en(parser: argparse.ArgumentParser) -> None:
    """
    add engine arguments to argument parser
    :param parser: CLI argument parser
    :type parser: argparse.ArgumentParser
    """
    argument_group = parser.add_argument_group("Engine Arguments")
    argument_group.add_argument("--engine",
                                choices=ENGINES,
                                default="general",
                                help="enumeration engine")
    argument_group.add_argument("--verify", action="store_true",
                                help="cross-check the results against the exhaustive oracle")
    argument_group.add_argument("--untrimmed", action="store_true",
                                help="stat: report the DAG before trimming (no index)")
    argument_group.add_argument("--dag", action="store_true",
                                help="stat: dump DAG vertices & edges")


def add_argument_group_of(parser: argparse.ArgumentParser) -> None:
    """
    add output arguments to argument parser
    :param parser: CLI argument parser
    :type parser: argparse.ArgumentParser
    """
    argument_group = parser.add_argument_group("Output Arguments")
    argument_group.add_argument("--format",
                                choices=FORMATS,
                                default="spans",
                                help="record format")
    argument_group.add_argument("--limit", type=non_negative, help="maximum number of records")
    argument_group.add_argument("--count-only", action="store_true", help="print the number of results only")


def add_argument_group_bm(parser: argparse.ArgumentParser) -> None:
    """
    add benchmark arguments to argument parser
    :param parser: CLI argument parser
    :type parser: argparse.ArgumentParser
    """
    argument_group = parser.add_argument_group("Benchmark Arguments")
    argument_group.add_argument("--bench", type=positive, metavar="N",
                                help="benchmark with N enumeration runs; prints a CSV report")
    argument_group.add_argument("--histogram", metavar="PATH",
                                help="write the delay histogram CSV to PATH")
    argument_group.add_argument("--bucket", type=positive, default=1000,
                                help="histogram bucket width in ns")


def read_document(args: argparse.Namespace) -> bytes:
    """ synthetic document or file/standard input """
    if args.synth is not None:
        logger.info("synthetic document: %d bytes, seed %d", args.synth, args.seed)
        return synth(args.synth, args.seed)
    return load(args.file)


def collect(results: Iterator, store: list) -> Iterator:
    """ pass results through, keeping a copy """
    for result in results:
        store.append(result)
        yield result


def run_extract(args: argparse.Namespace) -> int:
    """
    stream mappings as records
    :param args: CLI arguments
    :type args: argparse.Namespace
    :return: exit status
    :rtype: int
    """
    doc = read_document(args)
    formula, va = compile_pattern(args.pattern)
    results = extract_compiled(formula, va, doc, args.engine)

    seen: list = []
    if args.verify:
        results = collect(results, seen)

    limited = results if args.limit is None else islice(results, args.limit)

    if args.count_only:
        print(sum(1 for _ in limited))
    else:
        stream(format_mapping(mapping, formula.variables, args.format) for mapping in limited)

    if args.verify:
        deque(results, maxlen=0)  # the rest, past the limit
        expected = oracle_enumerate(va, doc)
        if len(set(seen)) != len(seen) or set(seen) != expected:
            logger.error("verification failed: %d results (%d distinct), oracle %d",
                         len(seen), len(set(seen)), len(expected))
            return EXIT_VERIFY
        logger.info("verified %d results", len(seen))

    return 0


def run_bench(args: argparse.Namespace) -> int:
    """
    benchmark & print a CSV report; optionally write the delay histogram
    :param args: CLI arguments
    :type args: argparse.Namespace
    :return: exit status
    :rtype: int
    """
    if args.engine not in ("general", "extended"):
        raise EngineError(f"benchmarks run the general & extended engines, not {args.engine}")

    doc = read_document(args)
    report, profile = bench(args.pattern, doc, args.bench, args.engine)
    dump(format_report(report))

    if args.histogram:
        dump(format_histogram(emit_histogram(profile, args.bucket)), args.histogram)

    return 0


def run_stat(args: argparse.Namespace) -> int:
    """
    print automaton, DAG & index stats as YAML
    :param args: CLI arguments
    :type args: argparse.Namespace
    :return: exit status
    :rtype: int
    """
    if args.engine not in ("general", "extended"):
        raise EngineError(f"stats are computed for the general & extended engines, not {args.engine}")

    doc = read_document(args)
    _, va = compile_pattern(args.pattern)
    dag, index = preprocess(va, doc, args.engine, trim=not args.untrimmed)
    stats(dag, index)

    if args.dag:
        dump(format_dag(dag) + "\n")

    return 0


def main(argv: list[str] | None = None) -> int:
    """ main CLI function """
    pars = create_argument_parser()
    args = pars.parse_args(argv)

    if args.histogram is not None and args.bench is None:
        pars.error("--histogram requires --bench")

    logging.basicConfig(stream=sys.stderr,
                        level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.command == "stat":
            return run_stat(args)
        if args.bench is not None:
            return run_bench(args)
        return run_extract(args)
    except PatternError as error:
        logger.error("pattern error: %s", error)
        return EXIT_PATTERN
    except OSError as error:
        logger.error("I/O error: %s", error)
        return EXIT_IO
    except (BudgetError, EngineError) as error:
        logger.error("%s", error)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
