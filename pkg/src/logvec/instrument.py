"""Chunk allocation observers.

A :class:`~logvec.core.LogVector` reports every chunk it allocates or
releases to its observer.  The default observer does nothing; install an
:class:`AllocStats` to count traffic and track how many cells are live.
"""

from collections import deque
from typing import Deque, Optional, Set, Tuple


class InstrumentationError(RuntimeError):
    """An event sequence that no correct container can produce."""


class NullObserver:
    """Observer that ignores everything."""

    __slots__ = ()

    def on_alloc(self, c: int) -> None:
        pass

    def on_free(self, c: int) -> None:
        pass


NULL_OBSERVER = NullObserver()


class AllocStats:
    """Counters for chunk allocations and releases.

    ``live_cells`` is the number of element cells currently allocated,
    ``peak_cells`` its maximum so far.  With ``log_events > 0`` the most
    recent events are kept in ``event_log`` as ``("alloc" | "free", chunk)``
    pairs, oldest dropped first.
    """

    def __init__(self, log_events: int = 0):
        self.allocations = 0
        self.deallocations = 0
        self.live_cells = 0
        self.peak_cells = 0
        self.event_log: Optional[Deque[Tuple[str, int]]] = (
            deque(maxlen=log_events) if log_events > 0 else None
        )
        self._live: Set[int] = set()

    def on_alloc(self, c: int) -> None:
        if c in self._live:
            raise InstrumentationError(f"chunk {c} allocated twice")
        self._live.add(c)
        self.allocations += 1
        self.live_cells += 1 << c
        if self.live_cells > self.peak_cells:
            self.peak_cells = self.live_cells
        if self.event_log is not None:
            self.event_log.append(("alloc", c))

    def on_free(self, c: int) -> None:
        if c not in self._live:
            raise InstrumentationError(f"chunk {c} freed while not allocated")
        self._live.remove(c)
        self.deallocations += 1
        self.live_cells -= 1 << c
        if self.event_log is not None:
            self.event_log.append(("free", c))

    @property
    def live_chunks(self) -> int:
        return self.allocations - self.deallocations

    @property
    def events(self) -> int:
        return self.allocations + self.deallocations

    def __repr__(self):
        return (
            f"AllocStats(allocations={self.allocations}, "
            f"deallocations={self.deallocations}, live_cells={self.live_cells}, "
            f"peak_cells={self.peak_cells})"
        )


def waste_fraction(stats: AllocStats, size: int) -> float:
    """Fraction of live cells that hold no element."""
    if stats.live_cells < 1:
        raise InstrumentationError("no cells allocated")
    if size > stats.live_cells:
        raise InstrumentationError(
            f"{size} elements cannot fit in {stats.live_cells} cells"
        )
    return (stats.live_cells - size) / stats.live_cells
