"""Adapted partitions of residue tuples and the constant-block structure.

A partition of the index set is adapted when every block has residue sum 0
mod p.  A strict refinement of an adapted partition is adapted only if it
splits some block into zero-sum pieces, so an adapted partition is maximal
exactly when each block is a minimal zero-sum set (no proper nonempty subset
sums to zero).  All searches below rest on that observation.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .datum import Partition, ResidueTuple
from .errors import ResidueSumNonzero, ResourceLimit, SizeNotMultipleOfP

ENUMERATION_LIMIT = 12


def _as_tuple(h) -> ResidueTuple:
    return h if isinstance(h, ResidueTuple) else ResidueTuple(tuple(h[0]), h[1])


def _zero_sum(values: Sequence[int], idx: Sequence[int], p: int) -> bool:
    return sum(values[i] for i in idx) % p == 0


def _is_minimal_zero_sum(values: Sequence[int], block: Sequence[int], p: int) -> bool:
    if not _zero_sum(values, block, p):
        return False
    block = sorted(block)
    # a zero-sum proper subset exists iff one not containing block[0] does
    # (its complement in the block is then zero-sum and contains block[0])
    rest = block[1:]
    for r in range(1, len(rest) + 1):
        for sub in combinations(rest, r):
            if len(sub) < len(block) and _zero_sum(values, sub, p):
                return False
    return True


def is_adapted(h: ResidueTuple, P: Partition) -> bool:
    if not P.covers(len(h)):
        return False
    return all(_zero_sum(h.h, tuple(b), h.p) for b in P.blocks)


def is_maximal(h: ResidueTuple, P: Partition) -> bool:
    return is_adapted(h, P) and all(_is_minimal_zero_sum(h.h, tuple(b), h.p) for b in P.blocks)


def _maximal_blocks(values: tuple[int, ...], p: int, remaining: tuple[int, ...],
                    cap: int | None) -> Iterator[list[tuple[int, ...]]]:
    if not remaining:
        yield []
        return
    if cap is not None and cap <= 0:
        return
    first, rest = remaining[0], remaining[1:]
    for r in range(0, len(rest) + 1):
        for others in combinations(rest, r):
            block = (first,) + others
            if not _is_minimal_zero_sum(values, block, p):
                continue
            left = tuple(i for i in rest if i not in others)
            for tail in _maximal_blocks(values, p, left, None if cap is None else cap - 1):
                yield [block] + tail


def enumerate_maximal(h: ResidueTuple, limit: int = ENUMERATION_LIMIT) -> list[Partition]:
    """Every maximal adapted partition of h."""
    if len(h) > limit:
        raise ResourceLimit(f"partition enumeration capped at {limit} residues")
    if h.total:
        raise ResidueSumNonzero(f"residue sum is {h.total}, not 0")
    out = [Partition.of(blocks) for blocks in _maximal_blocks(h.h, h.p, tuple(range(len(h))), None)]
    return sorted(out, key=lambda P: [sorted(b) for b in P.blocks])


@lru_cache(maxsize=None)
def _condition_sorted(values: tuple[int, ...], p: int, bound: int) -> bool:
    for _ in _maximal_blocks(values, p, tuple(range(len(values))), bound):
        return True
    return False


def partition_condition(h: ResidueTuple, limit: int = ENUMERATION_LIMIT) -> bool:
    """Some maximal adapted partition has at most floor(m/p) + 1 blocks.

    The answer only depends on the multiset of residues, so the search runs on
    the sorted tuple and is cached.
    """
    if len(h) > limit:
        raise ResourceLimit(f"partition enumeration capped at {limit} residues")
    if h.total:
        raise ResidueSumNonzero(f"residue sum is {h.total}, not 0")
    m = len(h) - 1
    return _condition_sorted(tuple(sorted(h.h)), h.p, m // h.p + 1)


def witness_partition(h: ResidueTuple, limit: int = ENUMERATION_LIMIT) -> Partition | None:
    """A maximal adapted partition meeting the size bound, if one exists."""
    if len(h) > limit:
        raise ResourceLimit(f"partition enumeration capped at {limit} residues")
    if h.total:
        raise ResidueSumNonzero(f"residue sum is {h.total}, not 0")
    bound = (len(h) - 1) // h.p + 1
    for blocks in _maximal_blocks(h.h, h.p, tuple(range(len(h))), bound):
        return Partition.of(blocks)
    return None


def block_structure(h: ResidueTuple) -> list[list[int]] | None:
    """Renumber into len(h)/p blocks of p equal residues, or None."""
    if len(h) == 0 or len(h) % h.p:
        raise SizeNotMultipleOfP(f"{len(h)} residues is not a positive multiple of {h.p}")
    by_value: dict[int, list[int]] = {}
    for i, v in enumerate(h.h):
        by_value.setdefault(v, []).append(i)
    if any(len(ix) % h.p for ix in by_value.values()):
        return None
    blocks = []
    for v in sorted(by_value):
        ix = by_value[v]
        blocks.extend(ix[s:s + h.p] for s in range(0, len(ix), h.p))
    return blocks


def partition_tools(h: ResidueTuple, P: Partition | None = None, mode: str = "condition"):
    if mode == "is_adapted":
        return is_adapted(h, P)
    if mode == "is_maximal":
        return is_maximal(h, P)
    if mode == "enumerate_maximal":
        return enumerate_maximal(h)
    if mode == "condition":
        return partition_condition(h)
    raise ValueError(f"unknown mode {mode!r}")


__all__ = [
    "ENUMERATION_LIMIT", "is_adapted", "is_maximal", "enumerate_maximal", "partition_condition",
    "witness_partition", "block_structure", "partition_tools",
]
