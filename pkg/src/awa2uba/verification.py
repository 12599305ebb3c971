"""Independent checkers for NBAs: lasso membership, emptiness, ambiguity,
bounded language comparison and macrorun enumeration."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .core import Awa, Nba
from .lasso import LassoWord, lasso_grid, normalize
from .posbool import evaluate
from .semantics import (PeriodicProfile, acceptance_table, check_local_consistency,
                        check_preorder_step)


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Macrorun:
    """Eventually periodic run ``stem cycle^omega`` as macrostate indices."""

    stem: tuple
    cycle: tuple

    def __getitem__(self, t: int):
        if t < len(self.stem):
            return self.stem[t]
        return self.cycle[(t - len(self.stem)) % len(self.cycle)]

    def unroll(self, n: int) -> tuple:
        return tuple(self[t] for t in range(n))

    def is_valid(self, b: Nba, w: LassoWord, accepting: bool = True) -> bool:
        """Replays the run on `w`; with `accepting`, also demands a visit to F
        on the cycle.  Period alignment is checked over one common period."""
        if not self.cycle or self[0] not in b.initial:
            return False
        horizon = len(self.stem) + len(w.prefix) + 2 * len(self.cycle) * len(w.period)
        for t in range(horizon):
            if self[t + 1] not in b.post(self[t], w[t]):
                return False
        if accepting and not any(s in b.accepting for s in self.cycle):
            return False
        return True


@dataclass(frozen=True)
class AmbiguityWitness:
    word: LassoWord
    run1: Macrorun
    run2: Macrorun


@dataclass(frozen=True)
class DiffReport:
    witness: Optional[LassoWord]
    awa_side: Optional[bool]  # acceptance by the AWA on the witness
    max_prefix: int
    max_period: int
    checked: int

    @property
    def equivalent(self) -> bool:
        return self.witness is None


def _nontrivial(component, graph) -> bool:
    if len(component) > 1:
        return True
    (v,) = component
    return graph.has_edge(v, v)


def _lasso_product(b: Nba, w: LassoWord, keep=None) -> nx.DiGraph:
    """Reachable part of ``b x positions(w)``; nodes are ``(state, position)``."""
    g = nx.DiGraph()
    start = [(s, 0) for s in b.initial if keep is None or s in keep]
    g.add_nodes_from(start)
    todo = deque(start)
    while todo:
        s, i = node = todo.popleft()
        j = w.next_position(i)
        for t in b.post(s, w[i]):
            if keep is not None and t not in keep:
                continue
            nxt = (t, j)
            if nxt not in g:
                g.add_node(nxt)
                todo.append(nxt)
            g.add_edge(node, nxt)
    return g


def _good_nodes(g: nx.DiGraph, is_accepting) -> set:
    """Nodes from which an accepting cycle is reachable."""
    seeds = set()
    for comp in nx.strongly_connected_components(g):
        if _nontrivial(comp, g) and any(is_accepting(v) for v in comp):
            seeds |= comp
    good = set(seeds)
    todo = deque(seeds)
    while todo:
        v = todo.popleft()
        for u in g.predecessors(v):
            if u not in good:
                good.add(u)
                todo.append(u)
    return good


def nba_lasso_accepts(b: Nba, w: LassoWord) -> bool:
    """Whether some run of `b` on ``u v^omega`` visits F infinitely often."""
    g = _lasso_product(b, w)
    for comp in nx.strongly_connected_components(g):
        if _nontrivial(comp, g) and any(s in b.accepting for s, _ in comp):
            return True
    return False


def _transition_graph(b: Nba) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(b)))
    for (s, letter), targets in b.delta.items():
        for t in targets:
            if not g.has_edge(s, t):
                g.add_edge(s, t, letter=letter)
    return g


def useful_states(b: Nba) -> frozenset:
    """Macrostates reachable from an initial one and able to reach an accepting cycle."""
    g = _transition_graph(b)
    reach = set()
    for s in b.initial:
        if s not in reach:
            reach |= nx.descendants(g, s) | {s}
    sub = g.subgraph(reach)
    return frozenset(_good_nodes(sub, lambda v: v in b.accepting))


def prune(b: Nba) -> Nba:
    """Drop macrostates that cannot lie on an accepting run."""
    return b.restrict(useful_states(b))


def _bfs_path(g: nx.DiGraph, sources, targets, allowed=None):
    """Shortest node path from some source to some target (inside `allowed`)."""
    targets = set(targets)
    parent = {s: None for s in sources}
    todo = deque(parent)
    while todo:
        v = todo.popleft()
        if v in targets:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for u in g.successors(v):
            if u not in parent and (allowed is None or u in allowed):
                parent[u] = v
                todo.append(u)
    return None


def nba_is_empty(b: Nba) -> Optional[LassoWord]:
    """None if ``L(b)`` is empty, else a witness lasso accepted by `b`."""
    g = _transition_graph(b)
    for comp in nx.strongly_connected_components(g):
        if not _nontrivial(comp, g):
            continue
        acc = [s for s in comp if s in b.accepting]
        if not acc:
            continue
        stem = _bfs_path(g, b.initial, acc)
        if stem is None:
            continue
        f = stem[-1]
        if g.has_edge(f, f):
            loop = [f, f]
        else:
            loop = [f] + _bfs_path(g, [v for v in g.successors(f) if v in comp], [f], comp)
        u = [g.edges[x, y]["letter"] for x, y in zip(stem, stem[1:])]
        v = [g.edges[x, y]["letter"] for x, y in zip(loop, loop[1:])]
        w = normalize(LassoWord(u, v))
        if not nba_lasso_accepts(b, w):
            raise AssertionError(f"emptiness witness {w} does not replay")
        return w
    return None


def ambiguity_check(b: Nba) -> Optional[AmbiguityWitness]:
    """None if `b` has at most one accepting run per word, else a witness.

    Explores the self-product over pairs of useful macrostates with a flag
    recording whether the two runs have diverged, and looks for a reachable
    cycle of diverged pairs that sees F in both components.
    """
    keep = useful_states(b)
    g = nx.DiGraph()
    start = [(p, q, p != q) for p in b.initial & keep for q in b.initial & keep]
    g.add_nodes_from(start)
    todo = deque(start)
    while todo:
        node = todo.popleft()
        p, q, div = node
        for letter in b.alphabet:
            tp = b.post(p, letter) & keep
            if not tp:
                continue
            tq = b.post(q, letter) & keep
            for p2 in tp:
                for q2 in tq:
                    nxt = (p2, q2, div or p2 != q2)
                    if nxt not in g:
                        g.add_node(nxt)
                        todo.append(nxt)
                    if not g.has_edge(node, nxt):
                        g.add_edge(node, nxt, letter=letter)
    diverged = g.subgraph([v for v in g if v[2]])
    for comp in nx.strongly_connected_components(diverged):
        if not _nontrivial(comp, diverged):
            continue
        f1 = [v for v in comp if v[0] in b.accepting]
        f2 = [v for v in comp if v[1] in b.accepting]
        if not f1 or not f2:
            continue
        witness = _extract_witness(b, g, start, comp, f1[0], f2)
        if witness is not None:
            return witness
    return None


def _extract_witness(b, g, start, comp, x, f2):
    stem = _bfs_path(g, start, [x])
    if stem is None:
        return None
    seg1 = _bfs_path(g, [x], f2, comp)
    y = seg1[-1]
    back = _bfs_path(g, [v for v in g.successors(y) if v in comp], [x], comp)
    loop = seg1 + back
    u = [g.edges[s, t]["letter"] for s, t in zip(stem, stem[1:])]
    v = [g.edges[s, t]["letter"] for s, t in zip(loop, loop[1:])]
    run1 = Macrorun(tuple(s[0] for s in stem[:-1]), tuple(s[0] for s in loop[:-1]))
    run2 = Macrorun(tuple(s[1] for s in stem[:-1]), tuple(s[1] for s in loop[:-1]))
    w = LassoWord(u, v)
    witness = AmbiguityWitness(w, run1, run2)
    if not validate_ambiguity_witness(b, witness):
        raise AssertionError("ambiguity witness does not replay")
    return witness


def validate_ambiguity_witness(b: Nba, witness: AmbiguityWitness) -> bool:
    r1, r2, w = witness.run1, witness.run2, witness.word
    if not (r1.is_valid(b, w) and r2.is_valid(b, w)):
        return False
    horizon = len(r1.stem) + len(r2.stem) + len(r1.cycle) * len(r2.cycle) + 1
    return any(r1[t] != r2[t] for t in range(horizon))


def bounded_language_diff(a: Awa, b: Nba, max_prefix: int = 3, max_period: int = 4,
                          state=None) -> DiffReport:
    """Compare ``L(A^state)`` with ``L(b)`` on every normalized lasso in the grid."""
    if state is None:
        state = a.initial
    grid = lasso_grid(a.alphabet, max_prefix, max_period)
    trimmed = prune(b)
    for count, w in enumerate(grid, 1):
        expected = acceptance_table(a, w)[state, 0]
        if nba_lasso_accepts(trimmed, w) != expected:
            return DiffReport(w, expected, max_prefix, max_period, count)
    return DiffReport(None, None, max_prefix, max_period, len(grid))


def accepting_run_nodes(b: Nba, w: LassoWord) -> set:
    """``(macrostate, position)`` pairs that lie on some accepting run over `w`."""
    g = _lasso_product(b, w)
    return _good_nodes(g, lambda v: v[0] in b.accepting)


def enumerate_lasso_macroruns(b: Nba, w: LassoWord, accepting_only: bool = True,
                              limit: int = 10_000) -> list:
    """All runs of `b` on `w` whose product path is a simple lasso.

    Every ultimately periodic run has exactly one such representation (cut at
    the first repeated ``(macrostate, position)`` pair).
    """
    g = _lasso_product(b, w)
    if accepting_only:
        allowed = _good_nodes(g, lambda v: v[0] in b.accepting)
    else:
        allowed = set(g)
    runs = []
    steps = 0
    for s0 in sorted(b.initial):
        root = (s0, 0)
        if root not in allowed:
            continue
        path = [root]
        on_path = {root: 0}
        stack = [iter(sorted(u for u in g.successors(root) if u in allowed))]
        while stack:
            steps += 1
            if steps > 50 * limit:
                raise ResourceLimitError("macrorun enumeration exceeded its step budget")
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                del on_path[path.pop()]
                continue
            k = on_path.get(nxt)
            if k is not None:
                cycle = path[k:]
                if not accepting_only or any(v[0] in b.accepting for v in cycle):
                    runs.append(Macrorun(tuple(v[0] for v in path[:k]),
                                         tuple(v[0] for v in cycle)))
                    if len(runs) > limit:
                        raise ResourceLimitError(f"more than {limit} macroruns")
                continue
            on_path[nxt] = len(path)
            path.append(nxt)
            stack.append(iter(sorted(u for u in g.successors(nxt) if u in allowed)))
    return runs


@dataclass(frozen=True)
class CorrespondenceViolation:
    time: int
    item: int
    detail: str


def _u_domain(a: Awa, index: int, q1) -> frozenset:
    comp = a.scc.round_robin[index]
    return comp - q1 if a.scc.round_robin_accepting[index] else comp & q1


def check_three_item_correspondence(a: Awa, b: Nba, run: Macrorun,
                                    distances: PeriodicProfile) -> Optional[CorrespondenceViolation]:
    """Relate the preorder and obligation set of a U-macrorun to the distances.

    Between consecutive accepting times ``i' < i`` and for every ``j`` in
    ``(i', i]``: obligation states are ordered exactly by distance and within
    ``i - j``; the remaining states are maximal with distance above ``i - j``;
    and the largest obligation distance is exactly ``i - j`` (0 when empty).
    """
    w = distances.word
    horizon = len(run.stem) + 2 * len(run.cycle) * len(w.period) + len(w.prefix) + 1
    states = [b.states[run[t]] for t in range(horizon)]
    accepting_times = [t for t in range(horizon) if not states[t].d]
    for prev, cur in zip(accepting_times, accepting_times[1:]):
        index = states[cur].scc
        for j in range(prev + 1, cur + 1):
            m = states[j]
            if m.scc != index:
                return CorrespondenceViolation(j, 0, "tracked SCC changed between breakpoints")
            dist = distances.at(j)
            dom = _u_domain(a, index, m.q1)
            po = m.preorder
            left = cur - j
            top = max((dist[q] for q in m.d), default=0)
            if top != left:
                return CorrespondenceViolation(j, 3, f"sup of obligation distances {top} != {left}")
            for q in m.d:
                if dist[q] > left:
                    return CorrespondenceViolation(j, 1, f"distance of {q} exceeds {left}")
                for q2 in dom:
                    if (dist[q] <= dist[q2]) != po.leq(q, q2):
                        return CorrespondenceViolation(j, 1, f"order of {q},{q2} disagrees")
            for q2 in dom - m.d:
                if dist[q2] <= left:
                    return CorrespondenceViolation(j, 2, f"distance of {q2} not above {left}")
                if any(not po.leq(q, q2) for q in dom):
                    return CorrespondenceViolation(j, 2, f"{q2} is not maximal")
    return None


def check_breakpoint_countdown(b: Nba, run: Macrorun,
                               distances: PeriodicProfile) -> Optional[int]:
    """First time where a nonempty obligation set of a B_u-run fails to count
    down by exactly one, or None."""
    w = distances.word
    horizon = len(run.stem) + 2 * len(run.cycle) * len(w.period) + len(w.prefix) + 1
    for t in range(horizon):
        m = b.states[run[t]]
        if not m.d:
            continue
        nxt = b.states[run[t + 1]]
        now = max(distances.at(t)[q] for q in m.d)
        later = max((distances.at(t + 1)[q] for q in nxt.d), default=0)
        if now != later + 1:
            return t
    return None


def _u_edge_ok(a: Awa, m, letter, m2) -> bool:
    """Whether ``m -letter-> m2`` is a transition of the single-preorder
    construction, decided from the definition with formula evaluation only."""
    scc = a.scc
    if not check_local_consistency(a, m.q1, m2.q1, letter):
        return False
    if m2.q2 != a.state_set - m2.q1:
        return False
    if not m.d:
        nxt = scc.next(m.scc)
        dom = _u_domain(a, nxt, m2.q1)
        return m2.scc == nxt and m2.preorder.domain == dom and m2.d == dom
    if m2.scc != m.scc:
        return False
    index = m.scc
    dom = _u_domain(a, index, m2.q1)
    if m2.preorder.domain != dom:
        return False
    if not check_preorder_step(a, index, m.q1, m.preorder, m2.q1, m2.preorder, letter):
        return False
    comp = scc.round_robin[index]
    if scc.round_robin_accepting[index]:
        outside, table = (a.state_set - m2.q1) - comp, a.dual_delta
    else:
        outside, table = m2.q1 - comp, a.delta
    closed = m2.preorder.downward_closed_sets()
    fits = [d for d in closed if all(evaluate(table[s, letter], d | outside) for s in m.d)]
    if not fits or m2.d != min(fits, key=len):
        return False
    return m2.d == dom or m2.d == dom - m2.preorder.maximal


def _u_candidates(a: Awa):
    from .constructions import UState
    from .preorder import all_preorders
    states = sorted(a.states)
    for k in range(len(states) + 1):
        for q1 in combinations(states, k):
            q1 = frozenset(q1)
            for index in range(len(a.scc.round_robin)):
                for po in all_preorders(_u_domain(a, index, q1)):
                    for d in po.downward_closed_sets():
                        yield UState(q1, a.state_set - q1, po, index, d)


def check_u_structure(a: Awa, b: Nba) -> list:
    """Compare an NBA claimed to be the single-preorder construction of `a`
    against the definition: initial states, every edge, and every missing edge.

    Candidate macrostates are enumerated exhaustively, so use on small inputs.
    Returns a list of human-readable violations (empty when consistent).
    """
    problems = []
    payloads = set(b.states)
    for i in b.initial:
        m = b.states[i]
        dom = _u_domain(a, 0, m.q1)
        if not (a.initial in m.q1 and m.scc == 0 and not m.d and len(m.preorder) <= 1
                and m.preorder.domain == dom):
            problems.append(f"bad initial macrostate {m}")
    want_initial = [c for c in _u_candidates(a) if a.initial in c.q1 and c.scc == 0
                    and not c.d and len(c.preorder) <= 1]
    for c in want_initial:
        if c not in payloads or b.index[c] not in b.initial:
            problems.append(f"missing initial macrostate {c}")
    candidates = list(_u_candidates(a))
    for i, m in enumerate(b.states):
        for letter in b.alphabet:
            have = {b.states[t] for t in b.post(i, letter)}
            for t in have:
                if not _u_edge_ok(a, m, letter, t):
                    problems.append(f"unexpected edge {m} -{letter}-> {t}")
            for c in candidates:
                if c not in have and _u_edge_ok(a, m, letter, c):
                    problems.append(f"missing edge {m} -{letter}-> {c}")
    return problems
