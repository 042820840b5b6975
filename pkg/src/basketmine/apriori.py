"""Level-wise join-and-prune miner over the horizontal database.

The classic baseline: level k costs one full scan of the raw transactions to
count its candidates, so the raw-pass counter grows with the depth of the
result. It is kept deliberately simple and single-threaded; its job in this
package is to be an independent second route to the same answer as the
tidset miner, and to make the scan-count difference measurable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .miner import FrequentItemset, MineResult, MineStats
from .model import Database, Itemset, SupportThreshold, resolve_threshold

__all__ = ["CandidateSet", "ScanCounters", "count_support", "generate_candidates", "mine_apriori"]


@dataclass
class CandidateSet:
    """Level-k candidates, in canonical order, with counters filled by counting."""

    level: int
    itemsets: list[Itemset]
    counts: list[int] = field(default_factory=list)


@dataclass
class ScanCounters:
    """Mutable instrumentation shared across one mining run."""

    raw_passes: int = 0
    containment_checks: int = 0


def generate_candidates(frequents: Sequence[Itemset]) -> CandidateSet:
    """Join k-itemsets sharing a (k-1)-prefix, then prune.

    A joined candidate survives only if every k-subset is itself frequent;
    anything pruned here could not possibly reach the threshold, so the
    counting pass never sees it.
    """
    if not frequents:
        return CandidateSet(level=0, itemsets=[])
    k = len(frequents[0])
    known = set(frequents)
    out: list[Itemset] = []
    for a_idx, a in enumerate(frequents):
        for b in frequents[a_idx + 1 :]:
            if a[:-1] != b[:-1]:
                break  # canonical order keeps equal prefixes contiguous
            candidate = a + (b[-1],)
            if all(sub in known for sub in combinations(candidate, k)):
                out.append(candidate)
    return CandidateSet(level=k + 1, itemsets=sorted(out))


def count_support(db: Database, candidates: CandidateSet, counters: ScanCounters) -> CandidateSet:
    """Count each candidate's containing transactions in one full pass.

    The pass is charged to ``counters.raw_passes`` even if the candidate list
    is empty, because the scan over the raw data is the cost being measured.
    """
    counters.raw_passes += 1
    counts = [0] * len(candidates.itemsets)
    for tx in db.transactions:
        items = tx.items
        for ci, candidate in enumerate(candidates.itemsets):
            counters.containment_checks += 1
            if _contains_sorted(items, candidate):
                counts[ci] += 1
    candidates.counts = counts
    return candidates


def _contains_sorted(haystack: Sequence[int], needle: Sequence[int]) -> bool:
    """Subset test for two strictly increasing sequences, by merging."""
    i = 0
    n = len(haystack)
    for x in needle:
        while i < n and haystack[i] < x:
            i += 1
        if i == n or haystack[i] != x:
            return False
        i += 1
    return True


def mine_apriori(db: Database, threshold: SupportThreshold | int) -> MineResult:
    """Level-wise mining: count, filter, join, repeat until nothing survives.

    ``stats.raw_passes`` ends up equal to the number of counting passes: one
    for the single items plus one per candidate level generated, including a
    final pass whose survivors all fall short.
    """
    start = time.perf_counter()
    minsupp = resolve_threshold(threshold, db.n_transactions)
    counters = ScanCounters()

    # Level 1 is its own counting pass over the raw transactions.
    counters.raw_passes += 1
    item_counts = [0] * len(db.items)
    for tx in db.transactions:
        for item in tx.items:
            item_counts[item] += 1
        counters.containment_checks += len(tx.items)
    current = sorted(
        (
            FrequentItemset((item,), count)
            for item, count in enumerate(item_counts)
            if count >= minsupp
        ),
        key=lambda fi: fi.itemset,
    )

    levels: list[list[FrequentItemset]] = []
    while current:
        levels.append(current)
        candidates = generate_candidates([fi.itemset for fi in current])
        if not candidates.itemsets:
            break
        count_support(db, candidates, counters)
        current = [
            FrequentItemset(itemset, count)
            for itemset, count in zip(candidates.itemsets, candidates.counts)
            if count >= minsupp
        ]
    stats = MineStats(
        raw_passes=counters.raw_passes,
        containment_checks=counters.containment_checks,
        elapsed_s=time.perf_counter() - start,
    )
    return MineResult(levels, stats)
