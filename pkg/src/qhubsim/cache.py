"""Bounded per-pair store of spare heralded Bell pairs.

When several parallel attempts for the same node pair succeed in one round,
the surplus pairs would otherwise be discarded; the cache keeps up to
``capacity`` of them per unordered pair (at most one deposited per round) so
a later request for that pair can be served with zero attempts and zero
waiting.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True, slots=True)
class NodePair:
    """Canonical unordered pair of distinct QPU indices: 0 <= lo < hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.lo >= self.hi:
            raise ValueError(f"node pair must satisfy 0 <= lo < hi, got ({self.lo}, {self.hi})")


class EntanglementCache:
    """Spare-pair store keyed by NodePair, bounded by ``capacity`` per pair.

    Counters: ``hits`` is the number of requests served from the store,
    ``deposits`` the number of spares ever stored. Since a hit consumes a
    previously deposited spare, hits <= deposits always holds.

    Instances are single-writer mutable state; one cache belongs to exactly
    one sweep-point execution.
    """

    __slots__ = ("capacity", "_stored", "hits", "deposits")

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {capacity}")
        self.capacity = capacity
        self._stored: dict[NodePair, int] = {}
        self.hits = 0
        self.deposits = 0

    def stored(self, pair: NodePair) -> int:
        """Current spare count for ``pair``."""
        return self._stored.get(pair, 0)

    def try_consume(self, pair: NodePair) -> bool:
        """Serve a request from the store if a spare exists; True on hit."""
        count = self._stored.get(pair, 0)
        if count == 0:
            return False
        if count == 1:
            del self._stored[pair]
        else:
            self._stored[pair] = count - 1
        self.hits += 1
        return True

    def deposit(self, pair: NodePair, surplus: int) -> int:
        """Store spares from ``surplus`` extra same-round successes.

        At most one spare is kept per call regardless of surplus size, and
        never beyond the per-pair capacity. Returns the number stored.
        """
        if surplus < 0:
            raise ValueError(f"surplus must be >= 0, got {surplus}")
        if surplus == 0:
            return 0
        count = self._stored.get(pair, 0)
        take = min(surplus, 1, self.capacity - count)
        if take <= 0:
            return 0
        self._stored[pair] = count + take
        self.deposits += take
        return take

    def reset(self) -> None:
        """Drop all spares and zero the counters. Idempotent."""
        self._stored.clear()
        self.hits = 0
        self.deposits = 0

    def total_stored(self) -> int:
        return sum(self._stored.values())
