"""Positional cursor over a LogVector.

A cursor is a ``(chunk, offset)`` pair whose global index is
``2**chunk - 1 + offset``.  Stepping walks cells within a chunk and
rolls over to the neighbouring chunk at either edge.  Seeking recomputes
the pair from the global index.

Positions range over ``[0, len(v)]``.  The end position is ``locate(len(v))``
and may name a chunk that is not allocated.  Any push, pop or clear on the
container invalidates its cursors.
"""

from .bits import locate


class LogIterator:
    __slots__ = ("_vec", "_slots", "chunk", "offset")

    def __init__(self, vec, chunk: int = 0, offset: int = 0):
        self._vec = vec
        self._slots = vec.directory.slots
        self.chunk = chunk
        self.offset = offset

    @property
    def index(self) -> int:
        return (1 << self.chunk) - 1 + self.offset

    @property
    def position(self):
        return self.chunk, self.offset

    def copy(self) -> "LogIterator":
        return LogIterator(self._vec, self.chunk, self.offset)

    def advance(self) -> None:
        if self.index >= len(self._vec):
            raise IndexError("advance past end")
        self.offset += 1
        if self.offset == 1 << self.chunk:
            self.chunk += 1
            self.offset = 0

    def retreat(self) -> None:
        if self.chunk == 0 and self.offset == 0:
            raise IndexError("retreat before begin")
        if self.offset == 0:
            self.chunk -= 1
            self.offset = (1 << self.chunk) - 1
        else:
            self.offset -= 1

    def seek(self, shift: int) -> None:
        target = self.index + shift
        if not 0 <= target <= len(self._vec):
            raise IndexError(f"seek to {target} outside [0, {len(self._vec)}]")
        self.chunk, self.offset = locate(target)

    def __iadd__(self, shift: int):
        self.seek(shift)
        return self

    def __isub__(self, shift: int):
        self.seek(-shift)
        return self

    def __add__(self, shift: int) -> "LogIterator":
        it = self.copy()
        it.seek(shift)
        return it

    def __sub__(self, shift: int) -> "LogIterator":
        it = self.copy()
        it.seek(-shift)
        return it

    def _check_deref(self):
        if self.index >= len(self._vec):
            raise IndexError("dereferencing the end position")

    def read(self):
        self._check_deref()
        return self._slots[self.chunk][self.offset]

    def write(self, v) -> None:
        self._check_deref()
        self._slots[self.chunk][self.offset] = v

    def __eq__(self, other):
        if not isinstance(other, LogIterator):
            return NotImplemented
        return (
            self._vec is other._vec
            and self.chunk == other.chunk
            and self.offset == other.offset
        )

    __hash__ = None

    def __repr__(self):
        return f"LogIterator(chunk={self.chunk}, offset={self.offset})"
