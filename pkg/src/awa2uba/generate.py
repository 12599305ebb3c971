"""Seeded random weak AWAs and the default test corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Awa, complete, require_weak
from .posbool import And, Or, Var

ACCEPTING, REJECTING, TRANSIENT = "acc", "rej", "trans"


@dataclass(frozen=True)
class GenParams:
    state_count: int
    alphabet_size: int
    scc_profile: tuple  # ((size, label), ...) in topological order
    formula_density: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "scc_profile",
                           tuple((int(s), str(k)) for s, k in self.scc_profile))
        if sum(s for s, _ in self.scc_profile) != self.state_count:
            raise ValueError("SCC sizes must add up to the state count")
        if not 0 < self.formula_density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if not 1 <= self.alphabet_size <= 26:
            raise ValueError("alphabet size must be between 1 and 26")
        for size, label in self.scc_profile:
            if size < 1 or label not in (ACCEPTING, REJECTING, TRANSIENT):
                raise ValueError(f"bad SCC entry ({size}, {label})")
            if label == TRANSIENT and size != 1:
                raise ValueError("transient SCCs are singletons")

    def to_dict(self) -> dict:
        return {"state_count": self.state_count, "alphabet_size": self.alphabet_size,
                "scc_profile": [list(p) for p in self.scc_profile],
                "formula_density": self.formula_density, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> GenParams:
        return cls(d["state_count"], d["alphabet_size"],
                   tuple(tuple(p) for p in d["scc_profile"]),
                   d["formula_density"], d["seed"])


def _random_tree(rng: random.Random, leaves: list):
    if len(leaves) == 1:
        return Var(leaves[0])
    cut = rng.randint(1, len(leaves) - 1)
    left = _random_tree(rng, leaves[:cut])
    right = _random_tree(rng, leaves[cut:])
    op = And if rng.random() < 0.5 else Or
    kids = []
    for c in (left, right):
        kids.extend(c.children if type(c) is op else (c,))
    return op(tuple(kids))


def random_weak_awa(p: GenParams) -> Awa:
    """Deterministic in ``p.seed``.  Edges stay inside an SCC or move forward,
    and a cycle through every non-transient SCC is forced, so the realised
    SCCs are exactly the profile."""
    rng = random.Random(p.seed)
    alphabet = [chr(ord("a") + i) for i in range(p.alphabet_size)]
    blocks = []
    start = 0
    for size, label in p.scc_profile:
        blocks.append((list(range(start, start + size)), label))
        start += size
    accepting = {q for members, label in blocks if label == ACCEPTING for q in members}
    delta = {}
    for k, (members, label) in enumerate(blocks):
        later = [q for m, _ in blocks[k + 1:] for q in m]
        for pos, q in enumerate(members):
            inside = [] if label == TRANSIENT else members
            allowed = inside + later
            forced = members[(pos + 1) % len(members)] if label != TRANSIENT else None
            forced_letter = rng.choice(alphabet)
            for x in alphabet:
                if not allowed:
                    continue
                chosen = [t for t in allowed if rng.random() < p.formula_density]
                if x == forced_letter and forced is not None and forced not in chosen:
                    chosen.append(forced)
                if not chosen:
                    chosen = [rng.choice(allowed)]
                rng.shuffle(chosen)
                delta[q, x] = _random_tree(rng, chosen)
    a = complete(Awa(alphabet, range(p.state_count), 0, accepting, delta))
    require_weak(a)
    return a


def random_profile(rng: random.Random, n: int, kind: str) -> tuple:
    """`kind` is ``single``, ``very_weak`` or ``mixed``."""
    label = lambda: rng.choice((ACCEPTING, REJECTING))  # noqa: E731
    if kind == "single":
        return ((n, label()),)
    if kind == "very_weak":
        return tuple((1, label()) for _ in range(n))
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    return tuple((s, label()) for s in sizes)


def corpus_params(count: int = 200, max_states: int = 5, alphabet_size: int = 2,
                  seed: int = 2024) -> list:
    """Parameter list for a reproducible corpus.

    Four in ten entries are single-SCC and two in ten very weak; state
    counts cycle through ``1..max_states``.
    """
    rng = random.Random(seed)
    kinds = ["single"] * 4 + ["very_weak"] * 2 + ["mixed"] * 4
    out = []
    for i in range(count):
        n = 1 + i % max_states
        kind = kinds[i % 10]
        profile = random_profile(rng, n, kind)
        density = rng.choice((0.3, 0.5, 0.7))
        out.append(GenParams(n, alphabet_size, profile, density, rng.getrandbits(64)))
    return out


def corpus(count: int = 200, max_states: int = 5, alphabet_size: int = 2,
           seed: int = 2024) -> list:
    return [(p, random_weak_awa(p)) for p in corpus_params(count, max_states, alphabet_size, seed)]
