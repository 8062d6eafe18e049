"""
document reading & record writing

functions:
    - load   -- load a document (file or standard input) as bytes
    - dump   -- write text to a file (or standard output)
    - stream -- write records one per line as they arrive
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import sys

from collections.abc import Iterable
from typing import TextIO


def load(path: str | None = None) -> bytes:
    """
    load a whole document as bytes
    :param path: path to file; None or "-" reads standard input
    :type path: str, optional
    :return: document
    :rtype: bytes
    """
    if path is None or path == "-":
        return sys.stdin.buffer.read()

    with open(path, "rb") as file:
        return file.read()


def dump(text: str, path: str | None = None) -> None:
    """
    write text to a file
    :param text: text
    :type text: str
    :param path: path to file; None or "-" writes to standard output
    :type path: str, optional
    """
    if path is None or path == "-":
        sys.stdout.write(text)
        return

    with open(path, "w", encoding="utf-8") as file:
        file.write(text)


def stream(records: Iterable[str], file: TextIO | None = None) -> int:
    """
    write records one per line, flushing after each
    :param records: records
    :type records: Iterable[str]
    :param file: output stream, defaults to standard output
    :type file: TextIO, optional
    :return: number of records written
    :rtype: int
    """
    file = file or sys.stdout
    count = 0
    for record in records:
        file.write(record + "\n")
        file.flush()
        count += 1
    return count
