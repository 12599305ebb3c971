"""Total preorders as ordered partitions, plus their enumeration and counting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb


@dataclass(frozen=True)
class TotalPreorder:
    """Ordered partition of a state set; ``blocks[0]`` holds the minimal elements.

    ``q <= q'`` iff the block of ``q`` does not come after the block of ``q'``.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        seen = set()
        for b in blocks:
            if seen & b:
                raise ValueError("blocks must be disjoint")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_ranks(cls, ranks: dict) -> TotalPreorder:
        """Group keys by value, smallest value first."""
        groups: dict = {}
        for q, r in ranks.items():
            groups.setdefault(r, set()).add(q)
        return cls(tuple(frozenset(groups[r]) for r in sorted(groups)))

    @property
    def domain(self) -> frozenset:
        return frozenset().union(*self.blocks)

    @property
    def maximal(self) -> frozenset:
        return self.blocks[-1] if self.blocks else frozenset()

    def __len__(self):
        return len(self.blocks)

    def rank(self, q) -> int:
        for i, b in enumerate(self.blocks):
            if q in b:
                return i
        raise KeyError(q)

    def leq(self, q, r) -> bool:
        return self.rank(q) <= self.rank(r)

    def lt(self, q, r) -> bool:
        return self.rank(q) < self.rank(r)

    def equiv(self, q, r) -> bool:
        return self.rank(q) == self.rank(r)

    def below(self, q) -> frozenset:
        """``{r : r < q}``."""
        return frozenset().union(*self.blocks[: self.rank(q)])

    def prefix(self, k: int) -> frozenset:
        """Union of the `k` lowest blocks."""
        return frozenset().union(*self.blocks[:k])

    def downward_closed_sets(self):
        """Every downward-closed subset, smallest first."""
        return [self.prefix(k) for k in range(len(self.blocks) + 1)]

    def is_downward_closed(self, d) -> bool:
        return d in self.downward_closed_sets()

    def restrict(self, keep) -> TotalPreorder:
        keep = frozenset(keep)
        return TotalPreorder(tuple(b & keep for b in self.blocks if b & keep))

    def render(self) -> str:
        return "[" + "<".join(_render_set(b) for b in self.blocks) + "]"

    def __repr__(self):
        return f"TotalPreorder({self.render()})"


def _render_set(s) -> str:
    return "{" + ",".join(str(q) for q in sorted(s)) + "}"


def ordered_partitions(items):
    """Yield every ordered set partition of `items` as a tuple of frozensets."""
    items = tuple(sorted(items))
    if not items:
        yield ()
        return
    for k in range(1, len(items) + 1):
        for first in combinations(items, k):
            rest = [x for x in items if x not in first]
            for tail in ordered_partitions(rest):
                yield (frozenset(first),) + tail


@lru_cache(maxsize=None)
def all_preorders(domain: frozenset) -> tuple:
    """All total preorders over `domain`, in a fixed order."""
    return tuple(TotalPreorder(p) for p in ordered_partitions(domain))


@lru_cache(maxsize=None)
def tpo(n: int) -> int:
    """Number of total preorders on an n-element set (ordered Bell numbers)."""
    if n == 0:
        return 1
    return sum(comb(n, k) * tpo(n - k) for k in range(1, n + 1))
