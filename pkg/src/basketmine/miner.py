"""Depth-first frequent-itemset mining over tidset intersections.

Frequent single items are ordered by ascending support; each prefix is then
extended only with items later in that order, carrying the prefix's tidset
along so every candidate costs exactly one sorted-list intersection. Any
extension below the threshold is pruned together with its whole subtree. No
candidate lists are materialized and the raw transaction database is never
touched: everything runs off the trade-list index, which is why
``stats.raw_passes`` is always 0 here.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import chain
from typing import TYPE_CHECKING, Iterator, Sequence

from .model import Itemset, SupportThreshold, resolve_threshold

if TYPE_CHECKING:
    from .tradelist import TradeList

__all__ = ["FrequentItemset", "MineResult", "MineStats", "intersect", "mine", "remine"]

# Switch to galloping when one operand is this many times longer than the other.
_GALLOP_RATIO = 8


def intersect(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Intersection of two strictly increasing sequences, as a sorted list."""
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return []
    if len(b) >= _GALLOP_RATIO * len(a):
        return _intersect_gallop(a, b)
    return _intersect_merge(a, b)


def _intersect_merge(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            out.append(x)
            i += 1
            j += 1
    return out


def _gallop_to(seq: Sequence[int], target: int, lo: int) -> int:
    """Smallest index >= lo whose value is >= target, or len(seq)."""
    n = len(seq)
    if lo >= n or seq[lo] >= target:
        return lo
    step = 1
    while lo + step < n and seq[lo + step] < target:
        step <<= 1
    return bisect_left(seq, target, lo + (step >> 1), min(lo + step, n))


def _intersect_gallop(small: Sequence[int], big: Sequence[int]) -> list[int]:
    out = []
    lo = 0
    n = len(big)
    for x in small:
        lo = _gallop_to(big, x, lo)
        if lo == n:
            break
        if big[lo] == x:
            out.append(x)
            lo += 1
    return out


@dataclass(frozen=True)
class FrequentItemset:
    """An itemset (canonical ascending-ordinal tuple) with its support count."""

    itemset: Itemset
    support: int


@dataclass(frozen=True)
class MineStats:
    """Instrumentation attached to every mining result.

    ``raw_passes`` counts full scans of the horizontal transaction database.
    ``intersections`` is the tidset miner's work counter and
    ``containment_checks`` the level-wise baseline's; exactly one of them is
    nonzero for a given result, and ``work_ops`` is whichever applies.
    """

    raw_passes: int
    intersections: int = 0
    containment_checks: int = 0
    elapsed_s: float = 0.0

    @property
    def work_ops(self) -> int:
        return self.intersections + self.containment_checks


@dataclass
class MineResult:
    """Frequent itemsets grouped by size, in canonical order, plus stats.

    ``levels[k-1]`` holds the k-itemsets; every level list is sorted by the
    canonical (ascending item ordinal) tuple, so two correct miners produce
    identical results object-for-object.
    """

    levels: list[list[FrequentItemset]]
    stats: MineStats

    def __iter__(self) -> Iterator[FrequentItemset]:
        return chain.from_iterable(self.levels)

    @property
    def n_itemsets(self) -> int:
        return sum(len(level) for level in self.levels)

    def level(self, k: int) -> list[FrequentItemset]:
        """The frequent k-itemsets (empty list if the result has no level k)."""
        if 1 <= k <= len(self.levels):
            return self.levels[k - 1]
        return []

    def pairs(self) -> set[tuple[Itemset, int]]:
        """The result as a set of (itemset, support) pairs, for equality checks."""
        return {(fi.itemset, fi.support) for fi in self}

    def support_map(self) -> dict[Itemset, int]:
        return {fi.itemset: fi.support for fi in self}


def mine(
    tl: "TradeList",
    threshold: SupportThreshold | int,
    *,
    threads: int = 1,
) -> MineResult:
    """Mine every itemset whose tidset meets the threshold.

    Singleton supports are read straight off the tidset lengths (no
    intersection charged); deeper levels pay one counted intersection per
    candidate. With ``threads > 1`` the independent top-level prefix subtrees
    run on a thread pool; results are merged in prefix order and the
    intersection counter is summed, so output and stats are identical to the
    sequential run.
    """
    start = time.perf_counter()
    minsupp = resolve_threshold(threshold, tl.n_transactions)
    order = sorted(
        (i for i in range(tl.n_items) if len(tl.tidset(i)) >= minsupp),
        key=lambda i: (len(tl.tidset(i)), i),
    )
    entries: list[tuple[int, Sequence[int]]] = [(i, tl.tidset(i)) for i in order]

    found: list[tuple[Itemset, int]] = [((item,), len(ts)) for item, ts in entries]
    n_intersections = 0

    def subtree(p: int) -> tuple[list[tuple[Itemset, int]], int]:
        out: list[tuple[Itemset, int]] = []
        count = 0

        def extend(
            prefix: tuple[int, ...],
            prefix_tids: Sequence[int],
            rest: list[tuple[int, Sequence[int]]],
        ) -> None:
            nonlocal count
            for q, (item, tids) in enumerate(rest):
                count += 1
                common = intersect(prefix_tids, tids)
                if len(common) >= minsupp:
                    grown = prefix + (item,)
                    out.append((grown, len(common)))
                    extend(grown, common, rest[q + 1 :])

        item, tids = entries[p]
        extend((item,), tids, entries[p + 1 :])
        return out, count

    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(subtree, range(len(entries))))
    else:
        chunks = [subtree(p) for p in range(len(entries))]
    for out, count in chunks:
        found.extend(out)
        n_intersections += count

    by_level: dict[int, list[FrequentItemset]] = {}
    for itemset, support in found:
        canon = tuple(sorted(itemset))
        by_level.setdefault(len(canon), []).append(FrequentItemset(canon, support))
    levels = [
        sorted(by_level[k], key=lambda fi: fi.itemset) for k in sorted(by_level)
    ]
    stats = MineStats(
        raw_passes=0,
        intersections=n_intersections,
        elapsed_s=time.perf_counter() - start,
    )
    return MineResult(levels, stats)


def remine(
    tl: "TradeList",
    new_threshold: SupportThreshold | int,
    *,
    threads: int = 1,
) -> MineResult:
    """Mine again at a changed threshold.

    Same contract as :func:`mine`; it exists as a named entry point for the
    support-change scenario, where the whole point is that no raw-database
    pass occurs (``stats.raw_passes == 0``).
    """
    return mine(tl, new_threshold, threads=threads)
