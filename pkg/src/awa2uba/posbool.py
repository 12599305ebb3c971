"""Positive Boolean formulas over state identifiers.

A formula is one of ``TRUE``, ``FALSE``, ``Var(state)``, ``And(children)`` or
``Or(children)``.  There is no negation.  Formulas are immutable and hashable,
so they can be used as dictionary keys and shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable, Iterable


class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And((self, other))

    def __or__(self, other: Formula) -> Formula:
        return Or((self, other))


@dataclass(frozen=True)
class _Const(Formula):
    value: bool

    def __repr__(self):
        return "tt" if self.value else "ff"


TRUE = _Const(True)
FALSE = _Const(False)


@dataclass(frozen=True)
class Var(Formula):
    state: Hashable

    def __repr__(self):
        return f"Var({self.state!r})"


@dataclass(frozen=True)
class And(Formula):
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("And needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Or(Formula):
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Or needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))


def evaluate(f: Formula, assignment) -> bool:
    """Return ``assignment |= f``; members of `assignment` are true."""
    if isinstance(f, Var):
        return f.state in assignment
    if isinstance(f, And):
        return all(evaluate(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate(c, assignment) for c in f.children)
    if isinstance(f, _Const):
        return f.value
    raise TypeError(f"not a positive formula: {f!r}")


def atoms(f: Formula) -> frozenset:
    """States occurring in `f`."""
    if isinstance(f, Var):
        return frozenset((f.state,))
    if isinstance(f, (And, Or)):
        return frozenset().union(*(atoms(c) for c in f.children))
    return frozenset()


def dual(f: Formula) -> Formula:
    """Swap tt/ff and and/or."""
    if isinstance(f, Var):
        return f
    if isinstance(f, And):
        return Or(tuple(dual(c) for c in f.children))
    if isinstance(f, Or):
        return And(tuple(dual(c) for c in f.children))
    return FALSE if f.value else TRUE


def rename(f: Formula, mapping) -> Formula:
    if isinstance(f, Var):
        return Var(mapping[f.state])
    if isinstance(f, And):
        return And(tuple(rename(c, mapping) for c in f.children))
    if isinstance(f, Or):
        return Or(tuple(rename(c, mapping) for c in f.children))
    return f


def _minimize(sets: Iterable[frozenset]) -> frozenset:
    ordered = sorted(set(sets), key=len)
    kept: list[frozenset] = []
    for s in ordered:
        if not any(k <= s for k in kept):
            kept.append(s)
    return frozenset(kept)


def minimal_models(f: Formula, universe=None) -> frozenset:
    """All subset-minimal sets ``Y`` (within `universe`, if given) with ``Y |= f``.

    The result is empty iff `f` is unsatisfiable over `universe`.
    """
    if isinstance(f, Var):
        if universe is not None and f.state not in universe:
            return frozenset()
        return frozenset((frozenset((f.state,)),))
    if isinstance(f, _Const):
        return frozenset((frozenset(),)) if f.value else frozenset()
    parts = [minimal_models(c, universe) for c in f.children]
    if isinstance(f, Or):
        return _minimize(m for p in parts for m in p)
    acc = {frozenset()}
    for p in parts:
        if not p:
            return frozenset()
        acc = set(_minimize(a | m for a, m in product(acc, p)))
    return frozenset(acc)


def satisfied_by_models(models, assignment) -> bool:
    """Satisfaction test against precomputed minimal models (monotonicity)."""
    return any(m <= assignment for m in models)


def conjunction(formulas: Iterable[Formula]) -> Formula:
    fs = tuple(formulas)
    if not fs:
        return TRUE
    if len(fs) == 1:
        return fs[0]
    return And(fs)


def size(f: Formula) -> int:
    if isinstance(f, (And, Or)):
        return 1 + sum(size(c) for c in f.children)
    return 1
