"""Ultimately periodic words ``u v^omega``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class LassoWord:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    @classmethod
    def parse(cls, text: str) -> LassoWord:
        """Parse ``"u;v"`` with space-separated letters, e.g. ``"a b;b a"``."""
        if text.count(";") != 1:
            raise ValueError(f"lasso literal needs exactly one ';': {text!r}")
        u, v = text.split(";")
        period = tuple(v.split())
        if not period:
            raise ValueError(f"lasso period must be nonempty: {text!r}")
        return cls(tuple(u.split()), period)

    def __str__(self):
        return " ".join(self.prefix) + ";" + " ".join(self.period)

    @property
    def length(self) -> int:
        """Number of distinct positions (|u| + |v|)."""
        return len(self.prefix) + len(self.period)

    def letter(self, i: int):
        """Letter at time `i` (any i >= 0)."""
        return self[i]

    def __getitem__(self, i: int):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def position(self, t: int) -> int:
        """Map time `t` to its position in ``0 .. length-1``."""
        if t < len(self.prefix):
            return t
        return len(self.prefix) + (t - len(self.prefix)) % len(self.period)

    def next_position(self, i: int) -> int:
        return self.position(i + 1)

    def unroll(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def letters(self) -> frozenset:
        return frozenset(self.prefix) | frozenset(self.period)


def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for k in range(1, n + 1):
        if n % k == 0 and v[:k] * (n // k) == v:
            return v[:k]
    return v


def normalize(w: LassoWord) -> LassoWord:
    """Canonical representative: primitive period, shortest prefix."""
    prefix = list(w.prefix)
    period = _primitive_root(w.period)
    while prefix and prefix[-1] == period[-1]:
        prefix.pop()
        period = period[-1:] + period[:-1]
    return LassoWord(tuple(prefix), period)


def lasso_grid(alphabet, max_prefix: int, max_period: int) -> list:
    """Distinct normalized lassos with ``|u| <= max_prefix`` and ``|v| <= max_period``.

    Order is deterministic: by prefix length, period length, then letters.
    """
    seen = set()
    out = []
    for plen in range(max_prefix + 1):
        for vlen in range(1, max_period + 1):
            for u in product(alphabet, repeat=plen):
                for v in product(alphabet, repeat=vlen):
                    w = normalize(LassoWord(u, v))
                    if w not in seen:
                        seen.add(w)
                        out.append(w)
    return out
