"""The log-chunked resizable array.

Storage is a fixed directory of chunk slots where chunk ``c`` holds
``2**c`` cells.  Growing allocates the next chunk; shrinking releases it.
Nothing is ever copied between chunks.

One emptied chunk is kept allocated as a spare ("deactivated") so that
pushes and pops alternating across a chunk boundary do not thrash the
allocator.  When a second chunk empties, the spare is released first.
"""

from typing import Any, Iterator, List, Optional

import numpy as np

from .bits import DEFAULT_MAX_CHUNKS, locate
from .instrument import NULL_OBSERVER


class CapacityError(OverflowError):
    """The chunk directory is full."""


class UnderflowError(IndexError):
    """Removal from an empty container."""


class ChunkDirectory:
    """Fixed-length table of chunk slots.

    Slot ``c`` is either ``None`` or a block of exactly ``2**c`` cells.  Blocks
    are Python lists when ``dtype`` is None and numpy arrays otherwise.
    """

    __slots__ = ("slots", "dtype")

    def __init__(self, max_chunks: int = DEFAULT_MAX_CHUNKS, dtype=None):
        if max_chunks < 1:
            raise ValueError("max_chunks must be at least 1")
        self.slots: List[Any] = [None] * max_chunks
        self.dtype = None if dtype is None else np.dtype(dtype)

    def __len__(self):
        return len(self.slots)

    def __getitem__(self, c):
        return self.slots[c]

    def allocate(self, c: int, fill=None, filled: bool = False):
        n = 1 << c
        if self.dtype is None:
            block = [fill] * n
        elif filled:
            block = np.full(n, fill, dtype=self.dtype)
        else:
            # Uninitialized, so allocation cost does not scale with the chunk.
            block = np.empty(n, dtype=self.dtype)
        self.slots[c] = block
        return block

    def release(self, c: int) -> None:
        self.slots[c] = None


class LogVector:
    """Resizable array with constant-time indexing and copy-free growth.

    Elements are arbitrary Python objects by default.  Passing ``dtype``
    stores them by value in numpy chunks instead.

    ``max_chunks`` bounds the directory, giving a capacity of
    ``2**max_chunks - 1`` elements.  ``observer`` receives ``on_alloc(c)`` /
    ``on_free(c)`` for every chunk allocated or released, including chunk 0
    at construction.
    """

    __slots__ = (
        "_dir", "_slots", "_size", "_chunks", "_active",
        "_top", "_base", "_limit", "_observer", "__weakref__",
    )

    def __init__(self, *, dtype=None, max_chunks: int = DEFAULT_MAX_CHUNKS, observer=None):
        self._dir = ChunkDirectory(max_chunks, dtype)
        self._slots = self._dir.slots
        self._observer = NULL_OBSERVER if observer is None else observer
        self._size = 0
        self._active = 0
        # Chunk 0 is allocated up front and never released.
        self._dir.allocate(0)
        self._chunks = 1
        self._observer.on_alloc(0)
        # Hot-path cache for the top active chunk: its block, the global
        # index of its cell 0, and the size at which it is full.
        self._top = None
        self._base = 0
        self._limit = 0

    @classmethod
    def with_size(cls, n: int, default=None, *, dtype=None,
                  max_chunks: int = DEFAULT_MAX_CHUNKS, observer=None) -> "LogVector":
        """Build a container of ``n`` copies of ``default``.

        Whole chunks are allocated and bulk-filled one at a time.  In object
        mode every cell refers to the same ``default`` object.
        """
        if n < 0:
            raise ValueError("negative size")
        if n > (1 << max_chunks) - 1:
            raise CapacityError(f"{n} elements exceed capacity of {max_chunks} chunks")
        v = cls(dtype=dtype, max_chunks=max_chunks, observer=observer)
        if n == 0:
            return v
        d = v._dir
        chunk0 = d.slots[0]
        chunk0[0] = default
        remaining = n - 1
        while remaining > 0:
            c = v._chunks
            remaining -= 1 << c
            d.allocate(c, default, filled=True)
            v._chunks += 1
            v._observer.on_alloc(c)
        v._size = n
        v._set_active(v._chunks)
        return v

    def _set_active(self, a: int) -> None:
        self._active = a
        if a == 0:
            self._top = None
            self._base = 0
            self._limit = 0
        else:
            self._top = self._slots[a - 1]
            self._base = (1 << (a - 1)) - 1
            self._limit = (1 << a) - 1

    # -- state -----------------------------------------------------------

    def size(self) -> int:
        return self._size

    def __len__(self):
        return self._size

    @property
    def chunks(self) -> int:
        """Allocated chunks, including a deactivated spare if present."""
        return self._chunks

    @property
    def active_chunks(self) -> int:
        """Chunks holding at least one element."""
        return self._active

    @property
    def max_chunks(self) -> int:
        return len(self._slots)

    @property
    def capacity(self) -> int:
        return (1 << len(self._slots)) - 1

    @property
    def dtype(self):
        return self._dir.dtype

    @property
    def directory(self) -> ChunkDirectory:
        return self._dir

    @property
    def observer(self):
        return self._observer

    def allocated_cells(self) -> int:
        return (1 << self._chunks) - 1

    # -- growth and shrinkage --------------------------------------------

    def push_back(self, v) -> None:
        size = self._size
        if size != self._limit:
            self._top[size - self._base] = v
            self._size = size + 1
            return
        a = self._active
        if a == len(self._slots):
            raise CapacityError(f"capacity of {self.capacity} elements exhausted")
        if self._chunks == a:
            top = self._dir.allocate(a)
            self._chunks = a + 1
            self._observer.on_alloc(a)
        else:
            # Reuse the deactivated spare.
            top = self._slots[a]
        self._active = a + 1
        self._top = top
        self._base = size
        self._limit = 2 * size + 1
        top[0] = v
        self._size = size + 1

    append = push_back

    def pop_back(self):
        """Remove and return the last element."""
        size = self._size
        if size == 0:
            raise UnderflowError("pop from empty LogVector")
        size -= 1
        top = self._top
        k = size - self._base
        value = top[k]
        if self._dir.dtype is None:
            top[k] = None
        self._size = size
        if k == 0:
            # The top chunk just emptied.  Keep it as the spare and drop
            # the old spare, if any.  The spare sits above every active
            # chunk, so chunk 0 is never released here.
            a = self._active
            if self._chunks == a + 1:
                self._dir.release(a)
                self._chunks = a
                self._observer.on_free(a)
            self._set_active(a - 1)
        return value

    def clear(self) -> None:
        """Remove all elements and release every chunk except chunk 0."""
        while self._chunks > 1:
            c = self._chunks - 1
            self._dir.release(c)
            self._chunks = c
            self._observer.on_free(c)
        if self._dir.dtype is None:
            self._slots[0][0] = None
        self._size = 0
        self._set_active(0)

    # -- access ----------------------------------------------------------

    def get(self, i: int):
        if not 0 <= i < self._size:
            raise IndexError(f"index {i} out of range for size {self._size}")
        c, k = locate(i)
        return self._slots[c][k]

    def set(self, i: int, v) -> None:
        if not 0 <= i < self._size:
            raise IndexError(f"index {i} out of range for size {self._size}")
        c, k = locate(i)
        self._slots[c][k] = v

    def __getitem__(self, i: int):
        if i < 0:
            i += self._size
        return self.get(i)

    def __setitem__(self, i: int, v) -> None:
        if i < 0:
            i += self._size
        self.set(i, v)

    def front(self):
        if self._size == 0:
            raise UnderflowError("front of empty LogVector")
        return self._slots[0][0]

    def back(self):
        if self._size == 0:
            raise UnderflowError("back of empty LogVector")
        return self._top[self._size - 1 - self._base]

    # -- traversal -------------------------------------------------------

    def __iter__(self) -> Iterator:
        remaining = self._size
        slots = self._slots
        c = 0
        while remaining > 0:
            n = 1 << c
            if n > remaining:
                n = remaining
            yield from slots[c][:n]
            remaining -= n
            c += 1

    def __reversed__(self) -> Iterator:
        size = self._size
        slots = self._slots
        for c in range(self._active - 1, -1, -1):
            base = (1 << c) - 1
            block = slots[c]
            for k in range(min(size - base, 1 << c) - 1, -1, -1):
                yield block[k]

    def begin(self):
        from .iterator import LogIterator
        return LogIterator(self, 0, 0)

    def end(self):
        from .iterator import LogIterator
        c, k = locate(self._size)
        return LogIterator(self, c, k)

    def tolist(self) -> list:
        return list(self)

    def __repr__(self):
        dt = "" if self._dir.dtype is None else f", dtype={self._dir.dtype}"
        return f"LogVector({self.tolist()!r}{dt})"

    # -- diagnostics -----------------------------------------------------

    def check_invariants(self) -> None:
        """Raise AssertionError if the structural invariants are broken."""
        size, chunks, active = self._size, self._chunks, self._active
        slots = self._slots

        def fail(msg):
            raise AssertionError(
                f"{msg} (size={size}, chunks={chunks}, active={active})"
            )

        if not 1 <= chunks <= len(slots):
            fail("chunk count out of range")
        if chunks not in (active, active + 1):
            fail("more than one deactivated chunk")
        for c, block in enumerate(slots):
            if c < chunks:
                if block is None:
                    fail(f"chunk {c} missing")
                if len(block) != 1 << c:
                    fail(f"chunk {c} has {len(block)} cells")
            elif block is not None:
                fail(f"slot {c} populated beyond chunk count")
        if (size == 0) != (active == 0):
            fail("size and active chunk count disagree on emptiness")
        if active and not (1 << (active - 1)) <= size <= (1 << active) - 1:
            fail("size outside the active chunks' range")
        if active:
            if self._top is not slots[active - 1]:
                fail("stale top chunk cache")
            if (self._base, self._limit) != ((1 << (active - 1)) - 1, (1 << active) - 1):
                fail("stale top chunk bounds")
        elif (self._top, self._limit) != (None, 0):
            fail("stale top chunk cache on empty container")
