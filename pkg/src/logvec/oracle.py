"""Flat reference model and differential harness.

:class:`ReferenceVector` mirrors the LogVector API on top of a plain list.
:func:`run_differential` replays a seeded random operation stream against
both and compares every observation.
"""

import random
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .bits import DEFAULT_MAX_CHUNKS, Location
from .core import CapacityError, LogVector, UnderflowError
from .instrument import AllocStats

Op = Tuple[Any, ...]
Observation = Tuple[Any, ...]

# Relative weights of generated operations.
OP_WEIGHTS = {
    "push": 45,
    "pop": 30,
    "get": 15,
    "set": 8,
    "clear": 1,
    "with_size": 1,
}


def brute_locate(i: int) -> Location:
    """Find the cell of global index ``i`` by peeling off chunk capacities 1, 2, 4, ..."""
    if i < 0:
        raise ValueError("negative index")
    c = 0
    while i >= 1 << c:
        i -= 1 << c
        c += 1
    return Location(c, i)


class ReferenceVector:
    """The obvious list-backed implementation of the container contract."""

    def __init__(self, *, max_chunks: int = DEFAULT_MAX_CHUNKS):
        self.items: List[Any] = []
        self.max_chunks = max_chunks
        self.capacity = (1 << max_chunks) - 1

    @classmethod
    def with_size(cls, n: int, default=None, *, max_chunks: int = DEFAULT_MAX_CHUNKS):
        r = cls(max_chunks=max_chunks)
        if n > r.capacity:
            raise CapacityError(f"{n} elements exceed capacity {r.capacity}")
        r.items = [default] * n
        return r

    def size(self) -> int:
        return len(self.items)

    def __len__(self):
        return len(self.items)

    def push_back(self, v) -> None:
        if len(self.items) >= self.capacity:
            raise CapacityError("capacity exhausted")
        self.items.append(v)

    def pop_back(self):
        if not self.items:
            raise UnderflowError("pop from empty")
        return self.items.pop()

    def get(self, i: int):
        if not 0 <= i < len(self.items):
            raise IndexError(i)
        return self.items[i]

    def set(self, i: int, v) -> None:
        if not 0 <= i < len(self.items):
            raise IndexError(i)
        self.items[i] = v

    def front(self):
        if not self.items:
            raise UnderflowError("front of empty")
        return self.items[0]

    def back(self):
        if not self.items:
            raise UnderflowError("back of empty")
        return self.items[-1]

    def clear(self) -> None:
        self.items.clear()

    def __iter__(self):
        return iter(self.items)

    def __reversed__(self):
        return reversed(self.items)

    def apply(self, op: Op) -> Observation:
        if op[0] == "with_size":
            try:
                fresh = ReferenceVector.with_size(op[1], op[2], max_chunks=self.max_chunks)
            except CapacityError:
                return ("err", "capacity")
            self.items = fresh.items
            return ("ok", None)
        return observe(self, op)


class InstrumentedSubject:
    """A LogVector under test, with allocation counters.

    A ``with_size`` operation replaces the container and starts fresh
    counters.
    """

    def __init__(self, *, dtype=None, max_chunks: int = DEFAULT_MAX_CHUNKS):
        self.dtype = dtype
        self.max_chunks = max_chunks
        self.stats = AllocStats()
        self.vec = LogVector(dtype=dtype, max_chunks=max_chunks, observer=self.stats)

    def apply(self, op: Op) -> Observation:
        if op[0] == "with_size":
            stats = AllocStats()
            try:
                vec = LogVector.with_size(op[1], op[2], dtype=self.dtype,
                                          max_chunks=self.max_chunks, observer=stats)
            except CapacityError:
                return ("err", "capacity")
            self.vec, self.stats = vec, stats
            return ("ok", None)
        return observe(self.vec, op)


def _plain(x):
    # numpy scalars compare equal to ints but keep the repr noise out of reports
    return x.item() if hasattr(x, "item") else x


def observe(target, op: Op) -> Observation:
    """Run one operation on ``target`` and describe what happened."""
    kind = op[0]
    try:
        if kind == "push":
            target.push_back(op[1])
            result = None
        elif kind == "pop":
            result = target.pop_back()
        elif kind == "get":
            result = target.get(op[1])
        elif kind == "set":
            target.set(op[1], op[2])
            result = None
        elif kind == "clear":
            target.clear()
            result = None
        elif kind == "front":
            result = target.front()
        elif kind == "back":
            result = target.back()
        elif kind == "iter":
            result = tuple(target)
        elif kind == "riter":
            result = tuple(reversed(target))
        else:
            raise ValueError(f"unknown operation {kind!r}")
    except UnderflowError:
        return ("err", "underflow")
    except IndexError:
        return ("err", "out-of-range")
    except CapacityError:
        return ("err", "capacity")
    if isinstance(result, tuple):
        result = tuple(_plain(x) for x in result)
    else:
        result = _plain(result)
    return ("ok", result)


def generate_ops(seed: int, n_ops: int, *, max_value: int = 1 << 31,
                 max_restart: int = 200, capacity: Optional[int] = None) -> List[Op]:
    """Seeded operation stream, biased toward growth.

    Indices are drawn from ``[0, size + 2)`` so some fall out of range.
    """
    rng = random.Random(seed)
    kinds = list(OP_WEIGHTS)
    weights = list(OP_WEIGHTS.values())
    ops: List[Op] = []
    size = 0
    for kind in rng.choices(kinds, weights, k=n_ops):
        if kind == "push":
            ops.append(("push", rng.randrange(max_value)))
            if capacity is None or size < capacity:
                size += 1
        elif kind == "pop":
            ops.append(("pop",))
            size = max(size - 1, 0)
        elif kind == "get":
            ops.append(("get", rng.randrange(size + 2)))
        elif kind == "set":
            ops.append(("set", rng.randrange(size + 2), rng.randrange(max_value)))
        elif kind == "clear":
            ops.append(("clear",))
            size = 0
        else:
            n = rng.randrange(max_restart + 1)
            ops.append(("with_size", n, rng.randrange(max_value)))
            if capacity is None or n <= capacity:
                size = n
    return ops


class DifferentialMismatch(AssertionError):
    def __init__(self, seed, step, prefix, expected, actual, reason="observation mismatch"):
        self.seed = seed
        self.step = step
        self.prefix = prefix
        self.expected = expected
        self.actual = actual
        tail = prefix[-20:]
        super().__init__(
            f"{reason} at step {step} (seed={seed}): expected {expected!r}, got {actual!r}\n"
            f"failing prefix has {len(prefix)} ops; last {len(tail)}: {tail!r}"
        )


def _step_observations(apply, current, op):
    result = apply(op)
    target = current()
    return (result, len(target), observe(target, ("front",)), observe(target, ("back",)))


def run_differential(seed: int, n_ops: int = 10_000, *, dtype=None,
                     max_chunks: int = DEFAULT_MAX_CHUNKS,
                     check_waste: bool = True,
                     on_step: Optional[Callable[[InstrumentedSubject], None]] = None,
                     ops: Optional[Sequence[Op]] = None) -> InstrumentedSubject:
    """Replay a seeded stream on LogVector and ReferenceVector; raise on divergence.

    After every step the op result, size, front and back must agree.  With
    ``check_waste`` the subject's live cells must also stay at or below
    ``4 * size - 1`` whenever it is non-empty.  The final contents are
    compared by forward and reverse iteration and by indexed reads.
    """
    if ops is None:
        capacity = (1 << max_chunks) - 1
        ops = generate_ops(seed, n_ops, capacity=capacity, max_restart=min(200, capacity + 5))
    ref = ReferenceVector(max_chunks=max_chunks)
    sub = InstrumentedSubject(dtype=dtype, max_chunks=max_chunks)
    for step, op in enumerate(ops):
        expected = _step_observations(ref.apply, lambda: ref, op)
        actual = _step_observations(sub.apply, lambda: sub.vec, op)
        if expected != actual:
            raise DifferentialMismatch(seed, step, list(ops[: step + 1]), expected, actual)
        size = actual[1]
        if check_waste and size and sub.stats.live_cells > 4 * size - 1:
            raise DifferentialMismatch(
                seed, step, list(ops[: step + 1]), 4 * size - 1, sub.stats.live_cells,
                reason="waste bound exceeded",
            )
        if on_step is not None:
            on_step(sub)
    final = [("iter",), ("riter",)] + [("get", i) for i in range(len(ref))]
    for op in final:
        expected, actual = observe(ref, op), observe(sub.vec, op)
        if expected != actual:
            raise DifferentialMismatch(seed, len(ops), list(ops), expected, actual,
                                       reason=f"final {op[0]} mismatch")
    return sub
