"""Alternating weak automata, NBAs, completion, dualization and SCC analysis."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

import networkx as nx

from .posbool import FALSE, TRUE, Formula, Var, atoms, dual, minimal_models


class WeaknessError(ValueError):
    """Raised by construction entry points on non-weak input."""

    def __init__(self, violation: WeaknessViolation):
        super().__init__(str(violation))
        self.violation = violation


class SccKind(enum.Enum):
    ACCEPTING = "accepting"
    REJECTING = "rejecting"
    TRANSIENT = "transient"


@dataclass(frozen=True)
class WeaknessViolation:
    scc: frozenset
    accepting_state: int
    rejecting_state: int

    def __str__(self):
        members = ",".join(str(q) for q in sorted(self.scc))
        return (f"SCC {{{members}}} mixes accepting state {self.accepting_state} "
                f"and rejecting state {self.rejecting_state}")


@dataclass(frozen=True)
class SccAnalysis:
    """SCC decomposition of the underlying graph.

    `components` lists every SCC in topological order of the condensation
    (ties broken by smallest member).  `round_robin` keeps only the
    non-transient ones; its first element is the initial SCC of the
    constructions and `next` cycles through it.
    """

    components: tuple
    kinds: tuple
    round_robin: tuple
    round_robin_accepting: tuple
    rejecting_states: frozenset
    accepting_states: frozenset
    scc_index: Mapping  # state -> round-robin index, transient states absent

    def next(self, index: int) -> int:
        return (index + 1) % len(self.round_robin)

    def kind_of(self, component: frozenset) -> SccKind:
        return self.kinds[self.components.index(component)]


@dataclass(frozen=True, eq=False)
class Awa:
    """Alternating (weak) Büchi automaton over integer states.

    `delta` maps ``(state, letter)`` to a positive formula.  Instances built by
    hand may be partial; :func:`complete` makes them total.
    """

    alphabet: tuple
    states: tuple
    initial: int
    accepting: frozenset
    delta: Mapping

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", dict(self.delta))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letters in alphabet")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")
        known = set(self.states)
        if self.initial not in known:
            raise ValueError(f"initial state {self.initial} is not a state")
        if not self.accepting <= known:
            raise ValueError("accepting states must be states")
        for (q, letter), f in self.delta.items():
            if q not in known or letter not in self.alphabet:
                raise ValueError(f"transition ({q}, {letter}) outside Q x Sigma")
            if not atoms(f) <= known:
                raise ValueError(f"formula of ({q}, {letter}) names unknown states")

    def __eq__(self, other):
        if not isinstance(other, Awa):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.states == other.states
                and self.initial == other.initial and self.accepting == other.accepting
                and self.delta == other.delta)

    __hash__ = None

    def __repr__(self):
        return (f"Awa(|Q|={len(self.states)}, alphabet={self.alphabet}, "
                f"initial={self.initial}, accepting={sorted(self.accepting)})")

    @property
    def n(self) -> int:
        return len(self.states)

    @cached_property
    def state_set(self) -> frozenset:
        return frozenset(self.states)

    @cached_property
    def dual_delta(self) -> dict:
        return {key: dual(f) for key, f in self.delta.items()}

    @cached_property
    def models(self) -> dict:
        """Minimal models of every transition formula."""
        return {key: minimal_models(f) for key, f in self.delta.items()}

    @cached_property
    def dual_models(self) -> dict:
        return {key: minimal_models(f) for key, f in self.dual_delta.items()}

    @cached_property
    def scc(self) -> SccAnalysis:
        return scc_analyze(self)

    def with_initial(self, state: int) -> Awa:
        return Awa(self.alphabet, self.states, state, self.accepting, self.delta)

    def sat(self, assignment, state, letter) -> bool:
        """``assignment |= delta(state, letter)``."""
        return any(m <= assignment for m in self.models[state, letter])

    def dual_sat(self, assignment, state, letter) -> bool:
        return any(m <= assignment for m in self.dual_models[state, letter])

    def successors(self, state) -> frozenset:
        return frozenset().union(*(atoms(self.delta[state, a])
                                   for a in self.alphabet if (state, a) in self.delta))


def is_complete(a: Awa) -> bool:
    return all((q, x) in a.delta and a.delta[q, x] not in (TRUE, FALSE)
               for q in a.states for x in a.alphabet)


def complete(a: Awa) -> Awa:
    """Total transition function with explicit accepting/rejecting sinks.

    Missing rows and rows equal to ``ff`` go to a fresh rejecting sink, rows
    equal to ``tt`` to a fresh accepting sink.  Complete input is returned
    unchanged.
    """
    if is_complete(a):
        return a
    needs_top = any(a.delta.get((q, x)) == TRUE for q in a.states for x in a.alphabet)
    needs_bot = any(a.delta.get((q, x), FALSE) == FALSE
                    for q in a.states for x in a.alphabet)
    states = list(a.states)
    fresh = max(states, default=-1) + 1
    top = bot = None
    if needs_top:
        top, fresh = fresh, fresh + 1
        states.append(top)
    if needs_bot:
        bot = fresh
        states.append(bot)
    delta = {}
    for q in a.states:
        for x in a.alphabet:
            f = a.delta.get((q, x), FALSE)
            if f == TRUE:
                f = Var(top)
            elif f == FALSE:
                f = Var(bot)
            delta[q, x] = f
    accepting = set(a.accepting)
    if top is not None:
        accepting.add(top)
        for x in a.alphabet:
            delta[top, x] = Var(top)
    if bot is not None:
        for x in a.alphabet:
            delta[bot, x] = Var(bot)
    return Awa(a.alphabet, states, a.initial, accepting, delta)


def dualize(a: Awa) -> Awa:
    """Dual automaton: same graph, swapped and/or and tt/ff, complemented F."""
    return Awa(a.alphabet, a.states, a.initial, a.state_set - a.accepting, a.dual_delta)


def underlying_graph(a: Awa) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(a.states)
    for (q, _), f in a.delta.items():
        g.add_edges_from((q, t) for t in atoms(f))
    return g


def _ordered_components(a: Awa):
    g = underlying_graph(a)
    cond = nx.condensation(g)
    members = {c: frozenset(cond.nodes[c]["members"]) for c in cond.nodes}
    order = nx.lexicographical_topological_sort(cond, key=lambda c: min(members[c]))
    return g, [members[c] for c in order]


def scc_analyze(a: Awa) -> SccAnalysis:
    g, comps = _ordered_components(a)
    kinds = []
    for comp in comps:
        (q,) = comp if len(comp) == 1 else (None,)
        if q is not None and not g.has_edge(q, q):
            kinds.append(SccKind.TRANSIENT)
        elif comp & a.accepting:
            kinds.append(SccKind.ACCEPTING)
        else:
            kinds.append(SccKind.REJECTING)
    rr = tuple(c for c, k in zip(comps, kinds) if k is not SccKind.TRANSIENT)
    rr_acc = tuple(k is SccKind.ACCEPTING for c, k in zip(comps, kinds)
                   if k is not SccKind.TRANSIENT)
    rej = frozenset().union(*(c for c, k in zip(comps, kinds) if k is SccKind.REJECTING))
    acc = frozenset().union(*(c for c, k in zip(comps, kinds) if k is SccKind.ACCEPTING))
    index = {q: i for i, c in enumerate(rr) for q in c}
    return SccAnalysis(tuple(comps), tuple(kinds), rr, rr_acc, rej, acc, index)


def validate_weak(a: Awa) -> Optional[WeaknessViolation]:
    """None if every SCC lies inside or outside F, else an offending SCC."""
    _, comps = _ordered_components(a)
    for comp in comps:
        inside = comp & a.accepting
        outside = comp - a.accepting
        if inside and outside:
            return WeaknessViolation(comp, min(inside), min(outside))
    return None


def require_weak(a: Awa) -> None:
    violation = validate_weak(a)
    if violation is not None:
        raise WeaknessError(violation)


@dataclass(frozen=True, eq=False)
class Nba:
    """Nondeterministic Büchi automaton over indexed macrostates.

    ``states[i]`` is the payload of macrostate ``i``; `initial`, `accepting`
    and the targets in `delta` are indices.
    """

    alphabet: tuple
    states: tuple
    initial: frozenset
    delta: Mapping  # (index, letter) -> frozenset of indices
    accepting: frozenset
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = len(self.states)
        for i in self.initial | self.accepting:
            if not 0 <= i < n:
                raise ValueError(f"undeclared macrostate {i}")
        for (i, _), targets in self.delta.items():
            if not 0 <= i < n or any(not 0 <= t < n for t in targets):
                raise ValueError(f"transition from {i} leaves the state space")
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.states)})

    def __len__(self):
        return len(self.states)

    def post(self, i: int, letter) -> frozenset:
        return self.delta.get((i, letter), frozenset())

    @property
    def transition_count(self) -> int:
        return sum(len(t) for t in self.delta.values())

    @classmethod
    def from_exploration(cls, alphabet, initial_payloads, successors, accepting):
        """Worklist construction of the part reachable from `initial_payloads`.

        `successors(payload, letter)` yields successor payloads and
        `accepting(payload)` decides membership in the acceptance set.
        """
        index: dict = {}
        states: list = []

        def intern(p):
            i = index.get(p)
            if i is None:
                i = index[p] = len(states)
                states.append(p)
            return i

        initial = frozenset(intern(p) for p in initial_payloads)
        delta = {}
        done = 0
        while done < len(states):
            p = states[done]
            for letter in alphabet:
                targets = frozenset(intern(s) for s in successors(p, letter))
                if targets:
                    delta[done, letter] = targets
            done += 1
        acc = frozenset(i for i, p in enumerate(states) if accepting(p))
        return cls(alphabet, states, initial, delta, acc)

    def restrict(self, keep) -> Nba:
        """Sub-automaton on the macrostates in `keep` (reindexed)."""
        keep = sorted(keep)
        remap = {old: new for new, old in enumerate(keep)}
        delta = {}
        for (i, letter), targets in self.delta.items():
            if i in remap:
                t = frozenset(remap[j] for j in targets if j in remap)
                if t:
                    delta[remap[i], letter] = t
        return Nba(self.alphabet, [self.states[i] for i in keep],
                   [remap[i] for i in self.initial if i in remap], delta,
                   [remap[i] for i in self.accepting if i in remap])
