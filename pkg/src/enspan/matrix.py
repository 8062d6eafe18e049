"""
packed Boolean matrices

functions:
    - bool_matrix_multiply -- Boolean matrix product (OR-accumulation of whole rows)

    - from_rows   -- build a matrix from int row bitsets
    - to_rows     -- int row bitsets of a matrix
    - identity    -- identity matrix
    - select_rows -- union of the rows selected by a bitset
    - layout      -- row word type & word count for a column count

Rows are padded to 8, 16, 32 or a multiple of 64 bits; bit c of a row is column c
(little-endian within and across words); padding bits are zero.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


from typing import NamedTuple

import numpy as np

from enspan.utils import iter_bits


class BoolMatrix(NamedTuple):
    rows: int
    cols: int
    bits: np.ndarray  # (rows, words)

    @property
    def nbytes(self) -> int:
        return self.bits.nbytes


def layout(cols: int) -> tuple[np.dtype, int]:
    """
    row word type & number of words per row
    :param cols: number of columns
    :type cols: int
    :return: word dtype & words per row
    :rtype: tuple[np.dtype, int]
    """
    for width, dtype in ((8, "<u1"), (16, "<u2"), (32, "<u4")):
        if cols <= width:
            return np.dtype(dtype), 1
    return np.dtype("<u8"), -(-cols // 64)


def from_rows(rows: list[int], cols: int) -> BoolMatrix:
    """
    build matrix from int row bitsets
    :param rows: row bitsets (bit c is column c)
    :type rows: list[int]
    :param cols: number of columns
    :type cols: int
    :return: matrix
    :rtype: BoolMatrix
    """
    dtype, words = layout(cols)
    assert all(row >> cols == 0 for row in rows), "row wider than the matrix"
    bits = np.zeros((len(rows), words), dtype=dtype)
    if rows:
        data = b"".join(row.to_bytes(words * dtype.itemsize, "little") for row in rows)
        bits[:] = np.frombuffer(data, dtype=dtype).reshape(len(rows), words)
    return BoolMatrix(len(rows), cols, bits)


def to_rows(matrix: BoolMatrix) -> list[int]:
    """ int row bitsets """
    return [int.from_bytes(row.tobytes(), "little") for row in matrix.bits]


def identity(size: int) -> BoolMatrix:
    return from_rows([1 << i for i in range(size)], size)


def bool_matrix_multiply(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """
    Boolean product: row r of the result is the OR of the rows k of `b` with a[r][k] set
    :param a: left matrix
    :type a: BoolMatrix
    :param b: right matrix
    :type b: BoolMatrix
    :return: product
    :rtype: BoolMatrix
    :raises ValueError: on dimension mismatch
    """
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} by {b.rows}x{b.cols}")

    result = np.zeros((a.rows, b.bits.shape[1]), dtype=b.bits.dtype)

    if a.rows and a.cols:
        columns = np.unpackbits(a.bits.view(np.uint8), axis=1, bitorder="little")[:, :a.cols].astype(bool)
        for k in range(a.cols):
            selected = columns[:, k]
            if selected.any():
                result[selected] |= b.bits[k]

    return BoolMatrix(a.rows, b.cols, result)


def select_rows(matrix: BoolMatrix, mask: int) -> int:
    """
    union of the rows whose index bit is set in `mask`
    :param matrix: matrix
    :type matrix: BoolMatrix
    :param mask: row bitset
    :type mask: int
    :return: column bitset
    :rtype: int
    """
    indices = list(iter_bits(mask))
    if not indices:
        return 0
    row = np.bitwise_or.reduce(matrix.bits[indices], axis=0)
    return int.from_bytes(row.tobytes(), "little")
