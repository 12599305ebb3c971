"""AWA to NBA constructions.

* :func:`miyano_hayashi` -- the classic breakpoint construction.
* :func:`brv_construct` -- two breakpoints, one for the automaton and one for
  its dual; correct but possibly ambiguous.
* :func:`bu_construct` -- unambiguous, one total preorder per SCC.
* :func:`u_construct` -- unambiguous, one preorder for the SCC being tracked.
* :func:`safety_fallback` -- for automata without any non-transient SCC.

Only macrostates reachable from the initial ones are built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .core import Awa, Nba, require_weak
from .preorder import TotalPreorder, all_preorders


def _subsets(items):
    items = sorted(items)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


def _fmt(s) -> str:
    return "{" + ",".join(str(q) for q in sorted(s)) + "}"


@dataclass(frozen=True)
class MhState:
    reach: frozenset
    obligation: frozenset

    def __str__(self):
        return f"({_fmt(self.reach)}|{_fmt(self.obligation)})"


@dataclass(frozen=True)
class BrvState:
    q1: frozenset
    q2: frozenset
    q3: frozenset
    q4: frozenset

    def __str__(self):
        return f"({_fmt(self.q1)}|{_fmt(self.q2)}|{_fmt(self.q3)}|{_fmt(self.q4)})"


@dataclass(frozen=True)
class BuState:
    q1: frozenset
    q2: frozenset
    preorders: tuple  # one TotalPreorder per round-robin SCC
    scc: int
    d: frozenset

    def __str__(self):
        pos = ",".join(p.render() for p in self.preorders)
        return f"({_fmt(self.q1)}|{pos}|C{self.scc}|D={_fmt(self.d)})"


@dataclass(frozen=True)
class UState:
    q1: frozenset
    q2: frozenset
    preorder: TotalPreorder
    scc: int
    d: frozenset

    def __str__(self):
        return f"({_fmt(self.q1)}|{self.preorder.render()}|C{self.scc}|D={_fmt(self.d)})"


@dataclass(frozen=True)
class SafetyState:
    q1: frozenset
    q2: frozenset

    def __str__(self):
        return f"({_fmt(self.q1)}|{_fmt(self.q2)})"


class Impossible(Exception):
    """A requested preorder or obligation set does not exist."""


class PreconditionError(ValueError):
    pass


class _Tables:
    """Per-automaton caches shared by the preorder constructions."""

    def __init__(self, a: Awa):
        self.a = a
        self.scc = a.scc
        self._succ: dict = {}
        self._back: dict = {}

    def q1_successors(self, q1, letter):
        key = (q1, letter)
        got = self._succ.get(key)
        if got is None:
            got = self._succ[key] = enumerate_q1_successors(self.a, q1, letter)
        return got

    def domain(self, index, q1):
        comp = self.scc.round_robin[index]
        return comp - q1 if self.scc.round_robin_accepting[index] else comp & q1

    def grouped_successor_preorders(self, index, q1, q1_next, letter):
        """``{backward preorder: [next preorders deriving it]}``."""
        key = (index, q1, q1_next, letter)
        got = self._back.get(key)
        if got is None:
            got = {}
            for po_next in all_preorders(self.domain(index, q1_next)):
                try:
                    po = backward_preorder(self.a, index, q1, q1_next, po_next, letter)
                except Impossible:
                    continue
                got.setdefault(po, []).append(po_next)
            self._back[key] = got
        return got

    def obligation_inputs(self, index, q1_next):
        """States outside the SCC that may discharge obligations, and the model table."""
        a = self.a
        comp = self.scc.round_robin[index]
        if self.scc.round_robin_accepting[index]:
            return (a.state_set - q1_next) - comp, a.dual_models
        return q1_next - comp, a.models


def enumerate_q1_successors(a: Awa, q1, letter) -> tuple:
    """All ``Q1'`` locally consistent with `q1` under `letter`, by subset sweep."""
    q1 = frozenset(q1)
    q2 = a.state_set - q1
    out = []
    for cand in _subsets(a.states):
        rest = a.state_set - cand
        if all(a.sat(cand, s, letter) for s in q1) and \
                all(a.dual_sat(rest, s, letter) for s in q2):
            out.append(cand)
    return tuple(out)


def backward_preorder(a: Awa, index: int, q1, q1_next, po_next: TotalPreorder,
                      letter) -> TotalPreorder:
    """The unique preorder at the current step compatible with `po_next`.

    Each state is ranked by the least number of lowest blocks of `po_next`
    (together with the relevant states outside the SCC) needed to satisfy
    its formula.  Raises :class:`Impossible` if even all blocks do not
    suffice for some state.
    """
    scc = a.scc
    comp = scc.round_robin[index]
    q1, q1_next = frozenset(q1), frozenset(q1_next)
    if scc.round_robin_accepting[index]:
        dom = comp - q1
        outside = (a.state_set - q1_next) - comp
        sat = a.dual_sat
    else:
        dom = comp & q1
        outside = q1_next - comp
        sat = a.sat
    thresholds = [outside | po_next.prefix(k) for k in range(len(po_next) + 1)]
    ranks = {}
    for q in dom:
        for k, s in enumerate(thresholds):
            if sat(s, q, letter):
                ranks[q] = k
                break
        else:
            raise Impossible(f"state {q} cannot be satisfied")
    return TotalPreorder.from_ranks(ranks)


def smallest_downward_closed(po_next: TotalPreorder, outside, formulas_models) -> frozenset:
    """Least downward-closed ``D`` with ``D | outside`` satisfying every formula.

    `formulas_models` is an iterable of minimal-model sets, one per formula.
    Raises :class:`Impossible` when the whole domain is not enough.
    """
    formulas_models = list(formulas_models)
    for k in range(len(po_next) + 1):
        d = po_next.prefix(k)
        have = d | outside
        if all(any(m <= have for m in models) for models in formulas_models):
            return d
    raise Impossible("transition disallowed")


def miyano_hayashi(a: Awa, minimal: bool = False) -> Nba:
    """Breakpoint construction over pairs (reachable set, obligation set).

    With `minimal`, successor sets are restricted to minimal models of the
    conjunction; by default every satisfying subset is allowed.
    """
    require_weak(a)
    F = a.accepting
    all_sets = _subsets(a.states)

    @lru_cache(maxsize=None)
    def covers(states, letter):
        cands = [y for y in all_sets if all(a.sat(y, s, letter) for s in states)]
        if minimal:
            cands = [y for y in cands if not any(z < y for z in cands)]
        return tuple(cands)

    def successors(m: MhState, letter):
        for reach in covers(m.reach, letter):
            if not m.obligation:
                yield MhState(reach, reach - F)
                continue
            kept = reach & F
            for o in _subsets(reach - F):
                if all(a.sat(o | kept, s, letter) for s in m.obligation):
                    yield MhState(reach, o)

    init = MhState(frozenset((a.initial,)), frozenset((a.initial,)) - F)
    return Nba.from_exploration(a.alphabet, [init], successors, lambda m: not m.obligation)


def brv_construct(a: Awa) -> Nba:
    """Two simultaneous breakpoint constructions over consistent 4-tuples."""
    require_weak(a)
    F = a.accepting
    Q = a.state_set
    tables = _Tables(a)

    def successors(m: BrvState, letter):
        for q1 in tables.q1_successors(m.q1, letter):
            q2 = Q - q1
            if not m.q3 and not m.q4:
                yield BrvState(q1, q2, q1 - F, q2 & F)
                continue
            opts3 = [o for o in _subsets(q1 - F)
                     if all(a.sat(o | (q1 & F), s, letter) for s in m.q3)]
            opts4 = [o for o in _subsets(q2 & F)
                     if all(a.dual_sat(o | (q2 - F), s, letter) for s in m.q4)]
            for o3, o4 in product(opts3, opts4):
                yield BrvState(q1, q2, o3, o4)

    initial = []
    for q1 in _subsets(a.states):
        if a.initial not in q1:
            continue
        q2 = Q - q1
        for o3, o4 in product(_subsets(q1 - F), _subsets(q2 & F)):
            initial.append(BrvState(q1, q2, o3, o4))
    return Nba.from_exploration(a.alphabet, initial, successors,
                                lambda m: not m.q3 and not m.q4)


def _require_round_robin(a: Awa):
    require_weak(a)
    if not a.scc.round_robin:
        raise PreconditionError("automaton has no non-transient SCC; use safety_fallback")


def bu_construct(a: Awa) -> Nba:
    """Unambiguous NBA tracking a total preorder for every SCC."""
    _require_round_robin(a)
    tables = _Tables(a)
    scc = a.scc
    Q = a.state_set
    count = len(scc.round_robin)

    def successors(m: BuState, letter):
        for q1 in tables.q1_successors(m.q1, letter):
            options = []
            for i in range(count):
                group = tables.grouped_successor_preorders(i, m.q1, q1, letter)
                cands = group.get(m.preorders[i])
                if not cands:
                    break
                options.append(cands)
            else:
                q2 = Q - q1
                for family in product(*options):
                    if not m.d:
                        nxt = scc.next(m.scc)
                        yield BuState(q1, q2, family, nxt, tables.domain(nxt, q1))
                        continue
                    outside, models = tables.obligation_inputs(m.scc, q1)
                    d = smallest_downward_closed(
                        family[m.scc], outside, (models[s, letter] for s in m.d))
                    yield BuState(q1, q2, family, m.scc, d)

    initial = []
    for q1 in _subsets(a.states):
        if a.initial not in q1:
            continue
        fams = product(*(all_preorders(tables.domain(i, q1)) for i in range(count)))
        initial.extend(BuState(q1, Q - q1, fam, 0, frozenset()) for fam in fams)
    return Nba.from_exploration(a.alphabet, initial, successors, lambda m: not m.d)


def u_shape_ok(domain: frozenset, po: TotalPreorder, d: frozenset) -> bool:
    """The obligation set is the whole domain or the domain minus the maximal block."""
    return d == domain or d == domain - po.maximal


def u_construct(a: Awa) -> Nba:
    """Unambiguous NBA tracking one SCC and its preorder at a time."""
    _require_round_robin(a)
    tables = _Tables(a)
    scc = a.scc
    Q = a.state_set

    def successors(m: UState, letter):
        for q1 in tables.q1_successors(m.q1, letter):
            q2 = Q - q1
            if not m.d:
                nxt = scc.next(m.scc)
                dom = tables.domain(nxt, q1)
                for po in all_preorders(dom):
                    yield UState(q1, q2, po, nxt, dom)
                continue
            group = tables.grouped_successor_preorders(m.scc, m.q1, q1, letter)
            outside, models = tables.obligation_inputs(m.scc, q1)
            dom = tables.domain(m.scc, q1)
            for po in group.get(m.preorder, ()):
                try:
                    d = smallest_downward_closed(po, outside, (models[s, letter] for s in m.d))
                except Impossible:
                    continue
                if u_shape_ok(dom, po, d):
                    yield UState(q1, q2, po, m.scc, d)

    initial = []
    for q1 in _subsets(a.states):
        if a.initial not in q1:
            continue
        dom = tables.domain(0, q1)
        po = TotalPreorder((dom,)) if dom else TotalPreorder(())
        initial.append(UState(q1, Q - q1, po, 0, frozenset()))
    return Nba.from_exploration(a.alphabet, initial, successors, lambda m: not m.d)


def safety_fallback(a: Awa) -> Nba:
    """All-accepting NBA guessing the acceptance sets, for automata whose
    SCCs are all transient."""
    require_weak(a)
    if a.scc.round_robin:
        raise PreconditionError("safety fallback needs an automaton without non-transient SCCs")
    tables = _Tables(a)
    Q = a.state_set

    def successors(m: SafetyState, letter):
        for q1 in tables.q1_successors(m.q1, letter):
            yield SafetyState(q1, Q - q1)

    initial = [SafetyState(q1, Q - q1) for q1 in _subsets(a.states) if a.initial in q1]
    return Nba.from_exploration(a.alphabet, initial, successors, lambda m: True)


ALGORITHMS = {
    "mh": miyano_hayashi,
    "brv": brv_construct,
    "bu": bu_construct,
    "u": u_construct,
}


def resolve_algorithm(a: Awa, algo: str) -> str:
    """Map ``auto`` (and the preorder constructions on SCC-free input) to a concrete name."""
    if algo in ("auto", "u", "bu") and not a.scc.round_robin:
        return "safety"
    if algo == "auto":
        return "u"
    return algo


def build(a: Awa, algo: str = "auto") -> Nba:
    name = resolve_algorithm(a, algo)
    if name == "safety":
        return safety_fallback(a)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    return ALGORITHMS[name](a)
