"""Bit tricks behind log-chunked indexing.

Chunk ``c`` holds ``2**c`` cells, so chunks ``0 .. c-1`` hold ``2**c - 1``
cells in total.  Element ``i`` therefore lives in the chunk named by the
highest set bit of ``i + 1``, at the offset given by the remaining low bits.
"""

from typing import NamedTuple

# Index word width.  Capacity with the default directory is 2**63 - 1.
WORD_BITS = 64
DEFAULT_MAX_CHUNKS = WORD_BITS - 1


class Location(NamedTuple):
    """Chunk number and the offset inside that chunk."""

    chunk: int
    offset: int


def msb(x: int) -> int:
    """Return the position of the highest set bit of a positive integer.

    Equivalent to ``WORD_BITS - 1 - clz(x)`` for values that fit the word.

    >>> msb(1), msb(8), msb(0b1011100101011101001110)
    (0, 3, 21)
    """
    if x <= 0:
        raise ValueError(f"msb is undefined for {x!r}; need a positive integer")
    return x.bit_length() - 1


def locate(i: int) -> Location:
    """Map global index ``i`` to its ``(chunk, offset)`` cell.

    No bounds checking; callers own that.
    """
    g = i + 1
    c = g.bit_length() - 1
    if c < 0:
        raise ValueError(f"no location for index {i!r}")
    return Location(c, g ^ (1 << c))


def chunk_capacity(c: int) -> int:
    return 1 << c


def cells_below(c: int) -> int:
    """Total cells in chunks ``0 .. c-1``, i.e. the global index of chunk ``c``'s first cell."""
    return (1 << c) - 1


def chunks_for(n: int) -> int:
    """Smallest chunk count whose cells hold ``n`` elements (``ceil(log2(n + 1))``)."""
    if n < 0:
        raise ValueError("negative element count")
    return n.bit_length()
