from itertools import product

import pytest
from hypothesis import given, strategies as st

from ldforms.datum import Partition, ResidueTuple
from ldforms.errors import ResidueSumNonzero, ResourceLimit, SizeNotMultipleOfP
from ldforms.partition import (block_structure, enumerate_maximal, is_adapted, is_maximal, partition_condition,
                               partition_tools, witness_partition)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def refines(Q, P):
    return Q != P and all(any(set(b) <= set(c) for c in P) for b in Q)


def brute_maximal(h):
    """Maximal adapted partitions straight from the definition."""
    n = len(h.h)
    adapted = [P for P in set_partitions(list(range(n)))
               if all(sum(h.h[i] for i in b) % h.p == 0 for b in P)]
    maximal = [P for P in adapted if not any(refines(Q, P) for Q in adapted)]
    return sorted((Partition.of(P) for P in maximal), key=lambda Q: [sorted(b) for b in Q.blocks])


def zero_sum_tuples(p, n):
    for h in product(range(1, p), repeat=n):
        if sum(h) % p == 0:
            yield ResidueTuple(h, p)


def test_p5_counterexample():
    assert not partition_condition(ResidueTuple((1, 1, -1, -1), 5))
    assert not partition_tools(ResidueTuple((1, 1, 4, 4), 5), mode="condition")


def test_p3_constant_triple():
    h = ResidueTuple((1, 1, 1), 3)
    assert partition_condition(h)
    assert witness_partition(h) == Partition.of([[0, 1, 2]])


def test_p3_two_constant_blocks():
    h = ResidueTuple((1, 1, 1, 2, 2, 2), 3)
    assert partition_condition(h)
    W = witness_partition(h)
    assert len(W) <= 2 and is_maximal(h, W)
    assert is_maximal(h, Partition.of([[0, 1, 2], [3, 4, 5]]))


def test_adapted_and_maximal_modes():
    h = ResidueTuple((1, 2, 1, 2), 3)
    coarse = Partition.of([[0, 1, 2, 3]])
    fine = Partition.of([[0, 1], [2, 3]])
    assert partition_tools(h, coarse, "is_adapted") and not partition_tools(h, coarse, "is_maximal")
    assert partition_tools(h, fine, "is_maximal")
    assert not is_adapted(h, Partition.of([[0, 2], [1, 3]]))
    assert not is_adapted(h, Partition.of([[0, 1]]))  # does not cover
    # each 1 pairs with one of the two 2s
    assert len(partition_tools(h, mode="enumerate_maximal")) == 2


def test_errors():
    with pytest.raises(ResidueSumNonzero):
        partition_condition(ResidueTuple((1, 1), 3))
    with pytest.raises(ResourceLimit):
        enumerate_maximal(ResidueTuple((1,) * 15, 3))
    with pytest.raises(SizeNotMultipleOfP):
        block_structure(ResidueTuple((1, 2), 3))


def test_block_structure_examples():
    assert block_structure(ResidueTuple((1, 2, 1, 2, 1, 2), 3)) == [[0, 2, 4], [1, 3, 5]]
    assert block_structure(ResidueTuple((1, 1, 1, 3, 4), 5)) is None
    assert block_structure(ResidueTuple((1, 1, 1), 3)) == [[0, 1, 2]]


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (5, 4), (5, 5), (7, 4)])
def test_enumerate_maximal_matches_definition(p, n):
    for h in zero_sum_tuples(p, n):
        assert enumerate_maximal(h) == brute_maximal(h)


@pytest.mark.parametrize("p,n", [(3, 6), (5, 5)])
def test_condition_matches_definition(p, n):
    for h in zero_sum_tuples(p, n):
        bound = (n - 1) // p + 1
        assert partition_condition(h) == any(len(P) <= bound for P in brute_maximal(h))


@given(st.lists(st.integers(1, 4), min_size=2, max_size=9))
def test_condition_depends_only_on_multiset(values):
    p = 5
    if sum(values) % p:
        values.append((-sum(values)) % p)
    h = ResidueTuple(tuple(values), p)
    assert partition_condition(h) == partition_condition(ResidueTuple(tuple(reversed(values)), p))
    w = witness_partition(h)
    assert (w is not None) == partition_condition(h)
    if w is not None:
        assert is_maximal(h, w)


@given(st.lists(st.integers(1, 2), min_size=3, max_size=12).filter(lambda v: len(v) % 3 == 0))
def test_block_structure_blocks_are_constant(values):
    h = ResidueTuple(tuple(values), 3)
    blocks = block_structure(h)
    if blocks is None:
        assert values.count(1) % 3 or values.count(2) % 3
        return
    assert sorted(i for b in blocks for i in b) == list(range(len(values)))
    assert all(len(b) == 3 and len({values[i] for i in b}) == 1 for b in blocks)
