"""
enspan utility functions

functions:
    - iter_bits -- iterate over set bit indices of an int bitset
    - compress  -- re-index a bitset densely relative to a universe bitset
    - expand    -- inverse of compress
    - synth     -- generate a synthetic i.i.d. document over a small alphabet
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from collections.abc import Iterator

import numpy as np


logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """
    iterate over set bits in ascending order
    :param mask: bitset
    :type mask: int
    :return: bit indices
    :rtype: Iterator[int]
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def compress(mask: int, universe: int) -> int:
    """
    map a subset of `universe` to dense indices: the k-th set bit of `universe` becomes bit k
    :param mask: subset bitset
    :type mask: int
    :param universe: universe bitset
    :type universe: int
    :return: dense bitset
    :rtype: int
    """
    dense = 0
    for index, bit in enumerate(iter_bits(universe)):
        if mask >> bit & 1:
            dense |= 1 << index
    return dense


def expand(dense: int, universe: int) -> int:
    """ inverse of `compress` """
    mask = 0
    for index, bit in enumerate(iter_bits(universe)):
        if dense >> index & 1:
            mask |= 1 << bit
    return mask


def synth(size: int, seed: int = 0, alphabet: bytes = b"ACGT") -> bytes:
    """
    generate a synthetic document of i.i.d. uniform bytes (DNA-like by default)
    :param size: document length in bytes
    :type size: int
    :param seed: random seed
    :type seed: int
    :param alphabet: letters to draw from
    :type alphabet: bytes
    :return: document
    :rtype: bytes
    """
    rng = np.random.default_rng(seed)
    letters = np.frombuffer(alphabet, dtype=np.uint8)
    logger.debug("synthetic document: %d bytes, seed %d", size, seed)
    return rng.choice(letters, size=size).tobytes()
