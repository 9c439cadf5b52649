import numpy as np
import pytest

from logvec import CapacityError, LogVector, locate
from logvec import oracle
from logvec.oracle import (
    DifferentialMismatch, OP_WEIGHTS, ReferenceVector, brute_locate, generate_ops, observe,
    run_differential,
)


def test_reference_basics():
    r = ReferenceVector()
    r.push_back(1)
    r.push_back(2)
    r.pop_back()
    assert r.back() == 1
    assert observe(r, ("get", 1)) == ("err", "out-of-range")
    assert observe(r, ("get", 1)) == observe(LogVector(), ("get", 1))


def test_error_tags_agree():
    for op in [("pop",), ("front",), ("back",), ("get", 0), ("set", 3, 1)]:
        assert observe(ReferenceVector(), op) == observe(LogVector(), op)
    assert observe(ReferenceVector(), ("pop",)) == ("err", "underflow")


def test_capacity_tag():
    r, v = ReferenceVector(max_chunks=2), LogVector(max_chunks=2)
    for x in range(3):
        r.push_back(x)
        v.push_back(x)
    assert observe(r, ("push", 9)) == observe(v, ("push", 9)) == ("err", "capacity")
    assert r.apply(("with_size", 4, 0)) == ("err", "capacity")
    with pytest.raises(CapacityError):
        ReferenceVector.with_size(4, max_chunks=2)


def test_unknown_op():
    with pytest.raises(ValueError):
        observe(ReferenceVector(), ("teleport",))


@pytest.mark.parametrize("i, expected", [(0, (0, 0)), (6, (2, 3)), (2**20, tuple(locate(2**20)))])
def test_brute_locate(i, expected):
    assert brute_locate(i) == expected


def test_brute_locate_negative():
    with pytest.raises(ValueError):
        brute_locate(-1)


def test_generator_is_seeded():
    assert generate_ops(3, 500) == generate_ops(3, 500)
    assert generate_ops(3, 500) != generate_ops(4, 500)


def test_generator_mix():
    ops = generate_ops(11, 50_000)
    counts = {k: sum(op[0] == k for op in ops) for k in OP_WEIGHTS}
    total = sum(OP_WEIGHTS.values())
    for kind, w in OP_WEIGHTS.items():
        assert counts[kind] / len(ops) == pytest.approx(w / total, abs=0.01)


@pytest.mark.parametrize("seed", range(5))
def test_differential_object_mode(seed):
    run_differential(seed, 3000)


@pytest.mark.parametrize("seed", range(3))
def test_differential_typed_mode(seed):
    run_differential(seed, 3000, dtype=np.int64)


def test_differential_at_capacity():
    # Tiny directory so pushes and restarts hit the capacity error.
    run_differential(9, 5000, max_chunks=4)


def test_differential_checks_invariants_each_step():
    run_differential(2, 2000, on_step=lambda sub: sub.vec.check_invariants())


class OffByOne(LogVector):
    __slots__ = ()

    def get(self, i):
        value = super().get(i)
        return value + 1 if i == 6 else value


def test_harness_catches_wrong_read(monkeypatch):
    monkeypatch.setattr(oracle, "LogVector", OffByOne)
    ops = [("push", x) for x in range(10)] + [("get", 6)]
    with pytest.raises(DifferentialMismatch) as exc:
        run_differential(123, ops=ops)
    err = exc.value
    assert err.seed == 123 and err.step == 10
    assert err.prefix == ops
    assert "seed=123" in str(err)


class Leaky(oracle.AllocStats):
    def on_alloc(self, c):
        super().on_alloc(c)
        self.live_cells += 4 << c


def test_harness_catches_waste(monkeypatch):
    monkeypatch.setattr(oracle, "AllocStats", Leaky)
    with pytest.raises(DifferentialMismatch, match="waste bound"):
        run_differential(0, ops=[("push", x) for x in range(4)])
