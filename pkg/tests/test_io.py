import json
import re

import pytest
from hypothesis import given, settings, strategies as st

from awa2uba.constructions import miyano_hayashi, u_construct
from awa2uba.core import Nba
from awa2uba.generate import GenParams, random_weak_awa
from awa2uba.io import (ParseError, SemanticError, parse_awa, parse_formula, parse_hoa,
                        print_awa, print_hoa, stats, stats_json)
from awa2uba.posbool import FALSE, TRUE, And, Or, Var
from awa2uba.verification import ambiguity_check, nba_lasso_accepts
from awa2uba.lasso import lasso_grid

from conftest import DATA, GOLDEN

HEADER = "awa v1\nalphabet: a b\nstates: 2\ninitial: 0\naccepting: 1\n"


def test_formula_precedence():
    assert parse_formula("0 & (1 | 2)") == And((Var(0), Or((Var(1), Var(2)))))
    assert parse_formula("0 & 1 | 2") == Or((And((Var(0), Var(1))), Var(2)))
    assert parse_formula("0 | 1 | 2") == Or((Var(0), Var(1), Var(2)))
    assert parse_formula("(0 | 1) | 2") == Or((Or((Var(0), Var(1))), Var(2)))
    assert parse_formula("true & false") == And((TRUE, FALSE))


def test_t1_round_trip(t1):
    text = (DATA / "t1.awa").read_text()
    doc = parse_awa(text)
    assert doc.name == "T1" and doc.awa == t1
    assert doc.line_map[0, "a"] == 9
    assert parse_awa(print_awa(t1)).awa == t1


def test_empty_accepting_set():
    doc = parse_awa(HEADER.replace("accepting: 1", "accepting:") + "state 0:\n  a -> 0\n")
    assert doc.awa.accepting == frozenset()
    # missing rows were completed with a rejecting sink
    assert doc.awa.n == 3


def test_sinks_are_printed_explicitly():
    a = parse_awa(HEADER + "state 0:\n  a -> true\n  b -> false\nstate 1:\n  a -> 1\n  b -> 1\n").awa
    text = print_awa(a)
    assert "states: 4" in text and "state 2:" in text and "state 3:" in text
    assert parse_awa(text).awa == a


def test_different_state_order_prints_differently(t1):
    from awa2uba.core import Awa
    swapped = Awa(t1.alphabet, (1, 0), 0, t1.accepting, t1.delta)
    assert print_awa(swapped) != print_awa(t1)


@pytest.mark.parametrize("text,line,col,expected", [
    ("awa v2\n", 1, 1, "'awa v1' header"),
    (HEADER + "state 0:\n  a -> 0 &\n", 7, 11, "state id"),
    (HEADER + "state 0:\n  a -> (0 | 1\n", 7, 14, "')'"),
    (HEADER + "state 0:\n  a -> 0 1\n", 7, 10, "'&', '|' or end of line"),
    ("awa v1\nalphabet: a\nstates: x\ninitial: 0\naccepting:\n", 3, 9, "integer"),
])
def test_positioned_parse_errors(text, line, col, expected):
    with pytest.raises(ParseError) as info:
        parse_awa(text)
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert err.expected.startswith(expected)


@pytest.mark.parametrize("text,fragment", [
    (HEADER + "state 0:\n  a -> 7\n", "out of range"),
    (HEADER.replace("a b", "a a"), "duplicate letters"),
    (HEADER + "state 0:\n  c -> 0\n", "unknown letter"),
    (HEADER + "state 0:\n  a -> 0\n  a -> 1\n", "duplicate row"),
    (HEADER.replace("initial: 0", "initial: 5"), "out of range"),
])
def test_semantic_errors(text, fragment):
    with pytest.raises(SemanticError, match=fragment):
        parse_awa(text)


def test_nonweak_input_needs_override():
    text = HEADER + "state 0:\n  a -> 1\nstate 1:\n  a -> 0\n"
    with pytest.raises(SemanticError, match="not weak"):
        parse_awa(text)
    assert parse_awa(text, allow_nonweak=True).awa.n == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32), st.sampled_from([0.3, 0.7, 1.0]))
def test_round_trip_on_generated(n, seed, density):
    a = random_weak_awa(GenParams(n, 2, ((n, "rej"),), density, seed))
    assert parse_awa(print_awa(a)).awa == a


def test_hoa_single_state():
    b = Nba(("a",), ["p"], [0], {(0, "a"): {0}}, [0])
    text = print_hoa(b)
    assert "States: 1" in text and "State: 0 {0}" in text
    assert "AP: 1" in text and "[0] 0" in text


def test_hoa_one_hot_labels(t1):
    text = print_hoa(miyano_hayashi(t1))
    labels = set(re.findall(r"\[([^\]]*)\]", text))
    assert labels == {"0&!1", "!0&1"}


def test_hoa_golden(t1):
    assert print_hoa(u_construct(t1), names=True) == (GOLDEN / "t1_u_names.hoa").read_text()
    assert print_hoa(miyano_hayashi(t1)) == (GOLDEN / "t1_mh.hoa").read_text()


def test_hoa_golden_is_well_formed():
    for path in GOLDEN.glob("*.hoa"):
        text = path.read_text()
        head, body = text.split("--BODY--")
        assert head.startswith("HOA: v1\n")
        for key in ("States:", "Start:", "AP:", "acc-name: Buchi", "Acceptance: 1 Inf(0)"):
            assert key in head
        assert body.rstrip().endswith("--END--")
        count = int(re.search(r"States: (\d+)", head).group(1))
        assert len(re.findall(r"^State: ", body, re.M)) == count


def test_hoa_read_back_preserves_language(t1):
    b = u_construct(t1)
    back = parse_hoa(print_hoa(b, names=True))
    assert back.states == tuple(str(m) for m in b.states)
    for w in lasso_grid("ab", 2, 3):
        assert nba_lasso_accepts(back, w) == nba_lasso_accepts(b, w)
    assert ambiguity_check(back) is None


def test_stats(t1):
    s = stats(u_construct(t1), t1)
    assert s["n"] == 2 and s["scc_count"] == 2 and s["largest_scc"] == 1
    assert s["tpo_n"] == 1 and s["bound_4tpo"] == 4 and s["within_bound"] is None
    assert json.loads(stats_json(u_construct(t1), t1)) == s


def test_stats_bound_for_single_scc():
    a = random_weak_awa(GenParams(3, 2, ((3, "rej"),), 0.6, 1))
    s = stats(u_construct(a), a)
    assert s["tpo_n"] == 13 and s["bound_4tpo"] == 52
    assert s["within_bound"] is True
