"""Log-chunked resizable array.

Chunk ``c`` holds ``2**c`` elements.  Growing allocates a chunk and never
copies, indexing is two bit operations, and one spare chunk absorbs
push/pop churn at a chunk boundary.
"""

from .bits import Location, chunks_for, locate, msb
from .core import CapacityError, ChunkDirectory, LogVector, UnderflowError
from .instrument import AllocStats, InstrumentationError, NullObserver, waste_fraction
from .iterator import LogIterator

__all__ = [
    "AllocStats",
    "CapacityError",
    "ChunkDirectory",
    "InstrumentationError",
    "Location",
    "LogIterator",
    "LogVector",
    "NullObserver",
    "UnderflowError",
    "chunks_for",
    "locate",
    "msb",
    "waste_fraction",
]
