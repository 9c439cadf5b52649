import random

import pytest
from hypothesis import given, strategies as st

from logvec import LogVector, locate


def filled(n):
    v = LogVector()
    for x in range(n):
        v.push_back(x * 10)
    return v


def test_empty_begin_is_end():
    v = LogVector()
    assert v.begin() == v.end()


@pytest.mark.parametrize("size, end", [(7, (3, 0)), (5, (2, 2)), (1, (1, 0))])
def test_end_is_one_past_last(size, end):
    v = filled(size)
    assert v.end().position == end == tuple(locate(size))
    assert v.end().index == size
    assert v.begin() != v.end()


def test_end_may_name_unallocated_chunk():
    v = filled(7)
    assert v.end().chunk == 3
    assert v.directory[3] is None


def test_step_across_chunk_edge():
    v = filled(10)
    it = v.begin() + 2
    assert it.position == (1, 1)
    it.advance()
    assert it.position == (2, 0)
    it.retreat()
    assert it.position == (1, 1)


def test_seek_from_begin():
    v = filled(10)
    it = v.begin()
    it.seek(0)
    assert it == v.begin()
    it.seek(6)
    assert it.position == (2, 3)
    assert it.read() == 60


def test_operators_return_copies():
    v = filled(20)
    it = v.begin()
    moved = it + 9
    assert it.index == 0 and moved.index == 9
    back = moved - 4
    assert back.index == 5
    moved += 1
    moved -= 3
    assert moved.index == 7


def test_walks():
    v = filled(100)
    it, seen = v.begin(), []
    while it != v.end():
        seen.append(it.read())
        it.advance()
    assert seen == [v.get(i) for i in range(100)]

    it, seen = v.end(), []
    while it != v.begin():
        it.retreat()
        seen.append(it.read())
    assert seen == list(reversed(v.tolist()))


def test_write():
    v = filled(30)
    it = v.begin() + 17
    it.write("w")
    assert v.get(17) == "w"


def test_contract_violations():
    v = filled(5)
    with pytest.raises(IndexError):
        v.end().read()
    with pytest.raises(IndexError):
        v.end().write(1)
    with pytest.raises(IndexError):
        v.end().advance()
    with pytest.raises(IndexError):
        v.begin().retreat()
    with pytest.raises(IndexError):
        v.begin().seek(6)
    with pytest.raises(IndexError):
        v.begin().seek(-1)


def test_equality_is_per_container():
    a, b = filled(3), filled(3)
    assert a.begin() != b.begin()
    assert a.begin() == a.begin()
    assert a.begin().__eq__(0) is NotImplemented


@given(st.integers(0, 300), st.data())
def test_three_ways_to_reach_a_position(size, data):
    v = filled(size)
    g = data.draw(st.integers(0, size))
    stepped = v.begin()
    for _ in range(g):
        stepped.advance()
    sought = v.begin()
    sought.seek(g)
    assert stepped.position == sought.position == tuple(locate(g))
    assert stepped.index == g


@given(st.integers(1, 300), st.data())
def test_advance_retreat_inverse(size, data):
    v = filled(size)
    g = data.draw(st.integers(1, size - 1)) if size > 1 else 0
    it = v.begin() + g
    start = it.position
    if g < size:
        it.advance()
        it.retreat()
        assert it.position == start
    if g > 0:
        it.retreat()
        it.advance()
        assert it.position == start


def test_seek_round_trip_random():
    rng = random.Random(5)
    v = filled(1000)
    for _ in range(500):
        it = v.begin() + rng.randrange(1001)
        start = it.position
        k = rng.randrange(-it.index, 1001 - it.index)
        it.seek(k)
        it.seek(-k)
        assert it.position == start
