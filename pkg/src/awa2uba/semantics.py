"""Ground-truth oracles on lasso words.

Everything here works on one period of a lasso: positions ``0 .. |u|+|v|-1``
where the successor of the last position is ``|u|``.  Acceptance is decided
directly on the alternating automaton, so these functions are the reference
the constructions are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Awa, SccKind
from .lasso import LassoWord
from .posbool import evaluate, minimal_models
from .preorder import TotalPreorder


class OracleError(RuntimeError):
    """An oracle invariant failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class PeriodicProfile:
    """Per-position annotations over one lasso period."""

    word: LassoWord
    entries: tuple

    def __getitem__(self, position: int):
        return self.entries[position]

    def at(self, t: int):
        """Annotation at time `t`."""
        return self.entries[self.word.position(t)]

    def __len__(self):
        return len(self.entries)


def acceptance_table(a: Awa, w: LassoWord) -> dict:
    """``(state, position) -> bool``: whether ``A^state`` accepts ``w[position...]``.

    Solved one SCC at a time, successors first: a greatest fixpoint inside
    accepting SCCs and a least fixpoint elsewhere.
    """
    scc = a.scc
    length = w.length
    value: dict = {}
    for comp, kind in reversed(list(zip(scc.components, scc.kinds))):
        start = kind is SccKind.ACCEPTING
        for q in comp:
            for i in range(length):
                value[q, i] = start
        changed = True
        while changed:
            changed = False
            for i in range(length):
                j = w.next_position(i)
                true_next = {s for s in a.states if value.get((s, j), False)}
                for q in comp:
                    v = evaluate(a.delta[q, w[i]], true_next)
                    if v != value[q, i]:
                        value[q, i] = v
                        changed = True
    return value


def awa_accepts(a: Awa, state, w: LassoWord) -> bool:
    return acceptance_table(a, w)[state, 0]


def unique_sequence(a: Awa, w: LassoWord) -> PeriodicProfile:
    """The sets ``Q1^i = {q : w[i...] in L(A^q)}`` for one period."""
    table = acceptance_table(a, w)
    return PeriodicProfile(w, tuple(
        frozenset(q for q in a.states if table[q, i]) for i in range(w.length)))


def check_local_consistency(a: Awa, q1, q1_next, letter) -> bool:
    """Both local rules: members of `q1` are satisfied by `q1_next`, and
    non-members have their dual formula satisfied by the complement."""
    q1_next = frozenset(q1_next)
    rest_next = a.state_set - q1_next
    for q in a.states:
        if q in q1:
            if not evaluate(a.delta[q, letter], q1_next):
                return False
        elif not evaluate(a.dual_delta[q, letter], rest_next):
            return False
    return True


def distance_domain(a: Awa, q1) -> frozenset:
    """``(q1 & R) | (A - q1)``."""
    scc = a.scc
    return (frozenset(q1) & scc.rejecting_states) | (scc.accepting_states - frozenset(q1))


def _escape_inputs(a: Awa, q, q1_next):
    """Formula, states outside the SCC that count, and candidate SCC members."""
    scc = a.scc
    comp = scc.round_robin[scc.scc_index[q]]
    if q in scc.rejecting_states:
        return a.delta, q1_next - comp, comp & q1_next
    return a.dual_delta, a.state_set - (q1_next | comp), comp - q1_next


def distance_profile(a: Awa, w: LassoWord, rw: PeriodicProfile | None = None) -> PeriodicProfile:
    """Distances to leave the current rejecting SCC (of A or its dual).

    Computed by value iteration from "unset" downwards; the result is the
    unique function consistent with the escape rules.
    """
    if rw is None:
        rw = unique_sequence(a, w)
    length = w.length
    domains = [distance_domain(a, rw[i]) for i in range(length)]
    dist: dict = {(q, i): None for i in range(length) for q in domains[i]}
    prepared = {}
    for i in range(length):
        j = w.next_position(i)
        for q in domains[i]:
            table, outside, pool = _escape_inputs(a, q, rw[j])
            prepared[q, i] = (table[q, w[i]], outside, pool, j)

    limit = len(dist) * length * max(1, a.n) + 2
    for _ in range(limit):
        changed = False
        for (q, i), (f, outside, pool, j) in prepared.items():
            known = sorted({dist[r, j] for r in pool if dist[r, j] is not None})
            best = None
            for k in [1] + [v + 1 for v in known]:
                have = outside | {r for r in pool
                                  if dist[r, j] is not None and dist[r, j] <= k - 1}
                if evaluate(f, have):
                    best = k
                    break
            if best != dist[q, i]:
                dist[q, i] = best
                changed = True
        if not changed:
            break
    else:
        raise OracleError("distance iteration did not converge")
    if any(v is None for v in dist.values()):
        missing = sorted((i, q) for (q, i), v in dist.items() if v is None)
        raise OracleError(f"infinite distance at (position, state) {missing}; "
                          "is the set profile the unique sequence?")
    return PeriodicProfile(w, tuple(
        {q: dist[q, i] for q in sorted(domains[i])} for i in range(length)))


def check_distance_rules(a: Awa, w: LassoWord, rw: PeriodicProfile,
                         dp: PeriodicProfile) -> list:
    """Violations of the escape rules (parts a and b) for every position."""
    problems = []
    for i in range(w.length):
        j = w.next_position(i)
        if set(dp[i]) != distance_domain(a, rw[i]):
            problems.append((i, None, "domain"))
            continue
        for q, k in dp[i].items():
            table, outside, pool = _escape_inputs(a, q, rw[j])
            f = table[q, w[i]]
            part_a = outside | {r for r in pool if dp[j][r] <= k - 1}
            if not evaluate(f, part_a):
                problems.append((i, q, "a"))
            if k > 1:
                part_b = outside | {r for r in pool if dp[j][r] <= k - 2}
                if evaluate(f, part_b):
                    problems.append((i, q, "b"))
    return problems


def dag_distance(a: Awa, w: LassoWord, rw: PeriodicProfile, q, t: int, depth: int):
    """Least over run DAGs of the latest SCC exit time, by explicit enumeration.

    Run DAGs start at vertex ``(q, t)`` and use only vertices that accept
    their suffix.  Each level keeps the vertices still inside the SCC of
    `q`; every combination of successor choices (minimal models suffice,
    extra successors only add branches) spawns a DAG.  Returns None when no
    DAG of depth `depth` lets every branch leave.
    """
    scc = a.scc
    comp = scc.round_robin[scc.scc_index[q]]
    rejecting = q in scc.rejecting_states
    frontiers = {frozenset((q,))}
    for level in range(1, depth + 1):
        time = t + level - 1
        nxt_set = rw.at(time + 1)
        universe = nxt_set if rejecting else a.state_set - nxt_set
        letter = w[time]
        following = set()
        for frontier in frontiers:
            choices = []
            for v in sorted(frontier):
                f = a.delta[v, letter] if rejecting else a.dual_delta[v, letter]
                choices.append(sorted(minimal_models(f, universe), key=sorted))
            for pick in product(*choices):
                level_set = frozenset().union(*pick) & comp
                if not level_set:
                    return level
                following.add(level_set)
        frontiers = following
        if not frontiers:
            return None
    return None


def preorders_from_distances(a: Awa, dp: PeriodicProfile) -> PeriodicProfile:
    """Order each SCC's distance domain by distance value."""
    scc = a.scc
    entries = []
    for dist in dp.entries:
        family = []
        for comp in scc.round_robin:
            family.append(TotalPreorder.from_ranks({q: v for q, v in dist.items() if q in comp}))
        entries.append(tuple(family))
    return PeriodicProfile(dp.word, tuple(entries))


def preorder_domain(a: Awa, index: int, q1) -> frozenset:
    """``C & q1`` for a rejecting SCC, ``C - q1`` for an accepting one."""
    scc = a.scc
    comp = scc.round_robin[index]
    return comp - frozenset(q1) if scc.round_robin_accepting[index] else comp & frozenset(q1)


def check_preorder_step(a: Awa, index: int, q1, po: TotalPreorder, q1_next,
                        po_next: TotalPreorder, letter) -> bool:
    """Pairwise check of the preorder successor rule for SCC number `index`.

    For all ``q, q'`` in the domain: ``q < q'`` iff some ``r`` in the next
    domain has its strict-down set (plus the relevant states outside the SCC)
    satisfying the formula of ``q`` but not that of ``q'``.
    """
    scc = a.scc
    comp = scc.round_robin[index]
    accepting = scc.round_robin_accepting[index]
    q1_next = frozenset(q1_next)
    if po.domain != preorder_domain(a, index, q1):
        return False
    if po_next.domain != preorder_domain(a, index, q1_next):
        return False
    if accepting:
        outside = a.state_set - (q1_next | comp)
        table = a.dual_delta
    else:
        outside = q1_next - comp
        table = a.delta
    downs = [outside | po_next.below(r) for r in sorted(po_next.domain)]
    dom = sorted(po.domain)
    for q in dom:
        for q2 in dom:
            witness = any(evaluate(table[q, letter], s) and not evaluate(table[q2, letter], s)
                          for s in downs)
            if witness != po.lt(q, q2):
                return False
    return True
