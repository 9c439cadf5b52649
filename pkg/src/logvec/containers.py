"""Containers the benchmark compares against, behind one small interface.

``vector`` is the conventional contiguous array: elements stored by value,
capacity doubled and everything copied when full.  ``deque`` and ``list``
are the CPython builtins; they hold references, so element size only
affects them through the objects pushed.
"""

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from .core import LogVector, UnderflowError
from .instrument import AllocStats

WORD = "word"
LARGE = "large"
ELEMENT_BYTES = {WORD: 8, LARGE: 256}

# 256-byte record; the key carries a checksum-able value.
LARGE_RECORD = np.dtype([("key", "<i8"), ("pad", "V248")])
assert LARGE_RECORD.itemsize == ELEMENT_BYTES[LARGE]


def element_dtype(kind: str) -> np.dtype:
    if kind == WORD:
        return np.dtype(np.int64)
    if kind == LARGE:
        return LARGE_RECORD
    raise ValueError(f"unknown element kind {kind!r}")


class DynamicArray:
    """Contiguous by-value array growing by doubling, like ``std::vector``."""

    __slots__ = ("_buf", "_size", "_cap")

    def __init__(self, dtype, capacity: int = 1):
        capacity = max(capacity, 1)
        self._buf = np.empty(capacity, dtype=dtype)
        self._size = 0
        self._cap = capacity

    @classmethod
    def with_size(cls, n: int, default, dtype) -> "DynamicArray":
        a = cls.__new__(cls)
        a._buf = np.full(max(n, 1), default, dtype=dtype)
        a._size = n
        a._cap = len(a._buf)
        return a

    def __len__(self):
        return self._size

    @property
    def capacity(self) -> int:
        return self._cap

    def push_back(self, v) -> None:
        size = self._size
        if size == self._cap:
            buf = np.empty(2 * size, dtype=self._buf.dtype)
            buf[:size] = self._buf
            self._buf = buf
            self._cap = 2 * size
        self._buf[size] = v
        self._size = size + 1

    def pop_back(self):
        if self._size == 0:
            raise UnderflowError("pop from empty DynamicArray")
        self._size -= 1
        return self._buf[self._size]

    def get(self, i: int):
        if not 0 <= i < self._size:
            raise IndexError(f"index {i} out of range for size {self._size}")
        return self._buf[i]

    def __iter__(self):
        return iter(self._buf[: self._size])


@dataclass
class Bound:
    """A live container plus the callables the workloads drive."""

    obj: object
    push: Callable
    pop: Callable
    get: Callable
    stats: Optional[AllocStats] = None


class Adapter:
    name = ""
    instrumented = False

    def new(self, kind: str) -> Bound:
        raise NotImplementedError

    def construct(self, n: int, default, kind: str) -> Bound:
        raise NotImplementedError


class LogVecAdapter(Adapter):
    name = "logvec"
    instrumented = True

    @staticmethod
    def _bind(v: LogVector, stats: AllocStats) -> Bound:
        return Bound(v, v.push_back, v.pop_back, v.get, stats)

    def new(self, kind):
        stats = AllocStats()
        return self._bind(LogVector(dtype=element_dtype(kind), observer=stats), stats)

    def construct(self, n, default, kind):
        stats = AllocStats()
        v = LogVector.with_size(n, default, dtype=element_dtype(kind), observer=stats)
        return self._bind(v, stats)


class VectorAdapter(Adapter):
    name = "vector"

    def new(self, kind):
        a = DynamicArray(element_dtype(kind))
        return Bound(a, a.push_back, a.pop_back, a.get)

    def construct(self, n, default, kind):
        a = DynamicArray.with_size(n, default, element_dtype(kind))
        return Bound(a, a.push_back, a.pop_back, a.get)


class DequeAdapter(Adapter):
    name = "deque"

    def new(self, kind):
        d = deque()
        return Bound(d, d.append, d.pop, d.__getitem__)

    def construct(self, n, default, kind):
        d = deque([default]) * n
        return Bound(d, d.append, d.pop, d.__getitem__)


class ListAdapter(Adapter):
    name = "list"

    def new(self, kind):
        items = []
        return Bound(items, items.append, items.pop, items.__getitem__)

    def construct(self, n, default, kind):
        items = [default] * n
        return Bound(items, items.append, items.pop, items.__getitem__)


ADAPTERS: Dict[str, Adapter] = {
    a.name: a for a in (LogVecAdapter(), VectorAdapter(), DequeAdapter(), ListAdapter())
}
DEFAULT_CONTAINERS = ("logvec", "vector", "deque")
