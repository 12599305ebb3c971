from dataclasses import replace

import pytest

from awa2uba.constructions import brv_construct, miyano_hayashi, u_construct
from awa2uba.core import Nba
from awa2uba.lasso import LassoWord, lasso_grid, normalize
from awa2uba.mutation import mutate_and_check
from awa2uba.semantics import distance_profile
from awa2uba.verification import (Macrorun, ResourceLimitError, ambiguity_check,
                                  bounded_language_diff, check_three_item_correspondence,
                                  check_u_structure, enumerate_lasso_macroruns,
                                  nba_is_empty, nba_lasso_accepts, prune,
                                  validate_ambiguity_witness)

A_OMEGA = LassoWord("", "a")


def loop(accepting=True):
    return Nba("ab", ["p"], [0], {(0, "a"): {0}, (0, "b"): {0}}, [0] if accepting else [])


def twin_copies():
    """Initial state 0 reads a into either of two accepting a-loops."""
    delta = {(0, "a"): {1, 2}, (1, "a"): {1}, (2, "a"): {2}}
    return Nba("a", ["i", "l", "r"], [0], delta, [1, 2])


def test_lasso_membership_trivial():
    assert nba_lasso_accepts(loop(), LassoWord("ab", "b"))
    assert not nba_lasso_accepts(loop(False), A_OMEGA)


def test_mh_rejects_a_omega_on_t1(t1):
    assert not nba_lasso_accepts(miyano_hayashi(t1), A_OMEGA)


def test_emptiness():
    unreachable = Nba("a", ["s", "t"], [0], {(1, "a"): {1}}, [1])
    assert nba_is_empty(unreachable) is None
    b = Nba("a", ["s"], [0], {(0, "a"): {0}}, [0])
    assert nba_is_empty(b) == A_OMEGA


def test_emptiness_witness_for_u_of_t1(t1):
    w = nba_is_empty(u_construct(t1))
    assert w is not None and nba_lasso_accepts(u_construct(t1), w)


def test_ambiguity_examples():
    assert ambiguity_check(loop()) is None
    witness = ambiguity_check(twin_copies())
    assert witness is not None
    assert validate_ambiguity_witness(twin_copies(), witness)
    runs = enumerate_lasso_macroruns(twin_copies(), normalize(witness.word))
    assert len(runs) >= 2


def test_brv_fixture_is_ambiguous(brv_ambiguous):
    b = brv_construct(brv_ambiguous)
    witness = ambiguity_check(b)
    assert witness is not None and validate_ambiguity_witness(b, witness)
    assert len(enumerate_lasso_macroruns(b, normalize(witness.word), limit=10**6)) >= 2


def test_u_on_t1_is_unambiguous(t1):
    assert ambiguity_check(u_construct(t1)) is None


def test_grid_size_for_unary_alphabet(t1):
    from awa2uba.core import Awa
    from awa2uba.posbool import Var
    a = Awa(("a",), (0,), 0, (0,), {(0, "a"): Var(0)})
    report = bounded_language_diff(a, miyano_hayashi(a), 3, 1)
    assert report.equivalent and report.checked == 1


def test_diff_finds_mutant(t1):
    b = u_construct(t1)
    # dropping the accepting loop state of the a b^w run changes the language
    victim = next(i for i, m in enumerate(b.states) if str(m) == "({0,1}|[{0}]|C0|D={})")
    mutant = b.restrict([i for i in range(len(b)) if i != victim])
    report = bounded_language_diff(t1, mutant, 2, 2)
    assert not report.equivalent
    assert report.awa_side is True
    assert not nba_lasso_accepts(mutant, report.witness)


def test_macroruns_deterministic():
    runs = enumerate_lasso_macroruns(loop(), LassoWord("a", "b"), accepting_only=False)
    assert len(runs) == 1
    blocked = Nba("ab", ["p"], [0], {(0, "a"): {0}}, [0])
    assert enumerate_lasso_macroruns(blocked, LassoWord("", "b"), accepting_only=False) == []


def test_macrorun_limit():
    delta = {(i, "a"): {0, 1, 2, 3} for i in range(4)}
    full = Nba("a", list("pqrs"), [0], delta, [0, 1, 2, 3])
    with pytest.raises(ResourceLimitError):
        enumerate_lasso_macroruns(full, A_OMEGA, limit=5)


def test_u_has_one_accepting_run_per_accepted_lasso(t1):
    b = u_construct(t1)
    from awa2uba.semantics import awa_accepts
    for w in lasso_grid("ab", 2, 3):
        assert len(enumerate_lasso_macroruns(b, w)) == int(awa_accepts(t1, 0, w))


def test_three_items_on_t1(t1):
    w = LassoWord("a", "b")
    b = u_construct(t1)
    (run,) = enumerate_lasso_macroruns(b, w)
    dp = distance_profile(t1, w)
    assert check_three_item_correspondence(t1, b, run, dp) is None


def test_three_items_detect_enlarged_obligations():
    from awa2uba.core import Awa
    from awa2uba.posbool import Var
    # rejecting SCC {0,1}: 0 leaves to the sink 2 on a, 1 must go through 0
    delta = {(0, "a"): Var(2) | Var(1), (1, "a"): Var(0), (2, "a"): Var(2)}
    a = Awa(("a",), (0, 1, 2), 1, (2,), delta)
    b = u_construct(a)
    w = A_OMEGA
    (run,) = enumerate_lasso_macroruns(b, w)
    dp = distance_profile(a, w)
    assert check_three_item_correspondence(a, b, run, dp) is None
    horizon = len(run.stem) + len(run.cycle)
    t = next(t for t in range(horizon) if b.states[run[t]].d
             and b.states[run[t]].d != b.states[run[t]].preorder.domain)
    m = b.states[run[t]]
    bigger = replace(m, d=m.preorder.domain)
    states = list(b.states) + [bigger]
    forged = Nba(b.alphabet, states, b.initial, b.delta, b.accepting)
    seq = [run[k] for k in range(horizon)]
    seq[t] = len(states) - 1
    forged_run = Macrorun(tuple(seq[:len(run.stem)]), tuple(seq[len(run.stem):]))
    violation = check_three_item_correspondence(a, forged, forged_run, dp)
    assert violation is not None and violation.item == 3


def test_u_structure_checker_accepts_construction(small_corpus):
    for _, a in small_corpus:
        if a.scc.round_robin and a.n <= 3:
            assert check_u_structure(a, u_construct(a)) == []


def test_mutations_of_u_t1_are_detected(t1):
    b = u_construct(t1)
    outcomes = [mutate_and_check(t1, b, s) for s in range(20)]
    assert sum(o.detected for o in outcomes) >= 19


def test_prune_keeps_language(t1):
    b = u_construct(t1)
    p = prune(b)
    assert len(p) <= len(b)
    assert bounded_language_diff(t1, p, 2, 3).equivalent
