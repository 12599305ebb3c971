"""Seeded mutations of a constructed NBA, used to measure how sensitive the
checkers are."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Awa, Nba
from .verification import ambiguity_check, bounded_language_diff, check_u_structure


@dataclass(frozen=True)
class MutationOutcome:
    seed: int
    kind: str
    description: str
    diff_witness: str | None
    ambiguous: bool
    structure_violations: int

    @property
    def detected(self) -> bool:
        return self.diff_witness is not None or self.ambiguous or self.structure_violations > 0


def drop_accepting_state(b: Nba, rng: random.Random) -> tuple:
    victim = rng.choice(sorted(b.accepting))
    keep = [i for i in range(len(b)) if i != victim]
    return b.restrict(keep), f"removed accepting macrostate {b.states[victim]}"


def retarget_transition(b: Nba, rng: random.Random) -> tuple:
    """Redirect one edge to a macrostate that is not already a successor,
    preferring one that differs from the old target only in its preorder."""
    edges = sorted((i, x, t) for (i, x), ts in b.delta.items() for t in ts)
    rng.shuffle(edges)
    for i, x, t in edges:
        old = b.states[t]
        others = [j for j in range(len(b)) if j not in b.post(i, x)]
        if not others:
            continue
        close = [j for j in others if b.states[j].q1 == old.q1 and b.states[j].scc == old.scc]
        new = rng.choice(close or others)
        delta = dict(b.delta)
        delta[i, x] = (b.post(i, x) - {t}) | {new}
        mutant = Nba(b.alphabet, b.states, b.initial, delta, b.accepting)
        return mutant, f"edge {b.states[i]} -{x}-> {old} now goes to {b.states[new]}"
    raise ValueError("no transition can be retargeted")


def mutate_and_check(a: Awa, b: Nba, seed: int, max_prefix: int = 3,
                     max_period: int = 4) -> MutationOutcome:
    """Even seeds drop an accepting macrostate, odd seeds retarget an edge."""
    rng = random.Random(seed)
    if seed % 2 == 0:
        kind, (mutant, desc) = "drop", drop_accepting_state(b, rng)
    else:
        kind, (mutant, desc) = "retarget", retarget_transition(b, rng)
    diff = bounded_language_diff(a, mutant, max_prefix, max_period)
    amb = ambiguity_check(mutant) is not None
    problems = check_u_structure(a, mutant)
    return MutationOutcome(seed, kind, desc,
                           None if diff.equivalent else str(diff.witness), amb, len(problems))
