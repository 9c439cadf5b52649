import pytest

from logvec import AllocStats, InstrumentationError, LogVector, NullObserver, waste_fraction


def test_single_alloc():
    s = AllocStats()
    s.on_alloc(0)
    assert s.live_cells == 1


def test_allocs_and_free():
    s = AllocStats()
    for c in range(4):
        s.on_alloc(c)
    assert (s.live_cells, s.peak_cells) == (15, 15)
    s.on_free(3)
    assert (s.live_cells, s.peak_cells, s.deallocations) == (7, 15, 1)
    assert s.live_chunks == 3
    assert s.events == 5


def test_bad_events():
    s = AllocStats()
    with pytest.raises(InstrumentationError):
        s.on_free(2)
    s.on_alloc(1)
    with pytest.raises(InstrumentationError):
        s.on_alloc(1)


def test_event_log_bounded_and_off_by_default():
    assert AllocStats().event_log is None
    s = AllocStats(log_events=2)
    for c in range(3):
        s.on_alloc(c)
    s.on_free(2)
    assert list(s.event_log) == [("alloc", 2), ("free", 2)]


@pytest.mark.parametrize("size, live, expected", [(7, 7, 0.0), (4, 15, 11 / 15), (3, 7, 4 / 7)])
def test_waste_fraction(size, live, expected):
    s = AllocStats()
    c = 0
    while s.live_cells < live:
        s.on_alloc(c)
        c += 1
    assert s.live_cells == live
    assert waste_fraction(s, size) == pytest.approx(expected, abs=0)


def test_waste_fraction_errors():
    s = AllocStats()
    with pytest.raises(InstrumentationError):
        waste_fraction(s, 0)
    s.on_alloc(0)
    with pytest.raises(InstrumentationError):
        waste_fraction(s, 2)


def test_null_observer_is_default():
    v = LogVector()
    assert isinstance(v.observer, NullObserver)
    for x in range(100):
        v.push_back(x)
    v.clear()


def test_tracks_container():
    s = AllocStats()
    v = LogVector(observer=s)
    for x in range(1000):
        v.push_back(x)
        assert s.live_cells == v.allocated_cells()
    while len(v) > 3:
        v.pop_back()
        assert s.live_cells == v.allocated_cells()
        assert s.live_chunks == v.chunks
    assert s.peak_cells == 2**10 - 1
