import pytest

from awa2uba.core import validate_weak
from awa2uba.generate import GenParams, corpus, corpus_params, random_weak_awa


def test_deterministic_in_seed():
    p = GenParams(4, 2, ((2, "rej"), (2, "acc")), 0.5, 99)
    assert random_weak_awa(p) == random_weak_awa(p)


def test_single_rejecting_profile():
    a = random_weak_awa(GenParams(3, 2, ((3, "rej"),), 0.2, 5))
    assert a.scc.rejecting_states == a.state_set
    assert len(a.scc.components) == 1


def test_profile_is_realised():
    profile = ((2, "acc"), (1, "rej"), (3, "rej"), (1, "acc"))
    for seed in range(30):
        a = random_weak_awa(GenParams(7, 2, profile, 0.3, seed))
        sizes = sorted(len(c) for c in a.scc.components)
        assert sizes == [1, 1, 2, 3]


def test_thousand_samples_are_weak():
    for p in corpus_params(1000, max_states=6, seed=11):
        assert validate_weak(random_weak_awa(p)) is None


def test_corpus_mix():
    items = corpus(200)
    single = sum(len(a.scc.components) == 1 for _, a in items)
    very_weak = sum(all(len(c) == 1 for c in a.scc.components) for _, a in items)
    assert single >= 60 and very_weak >= 20
    assert all(a.n <= 5 and len(a.alphabet) == 2 for _, a in items)


@pytest.mark.parametrize("bad", [
    dict(state_count=3, scc_profile=((2, "rej"),)),
    dict(state_count=2, scc_profile=((2, "trans"),)),
    dict(state_count=1, scc_profile=((1, "rej"),), formula_density=0.0),
])
def test_invalid_params(bad):
    args = dict(state_count=1, alphabet_size=2, scc_profile=((1, "rej"),),
                formula_density=0.5, seed=0)
    args.update(bad)
    with pytest.raises(ValueError):
        GenParams(**args)


def test_params_round_trip():
    p = GenParams(2, 2, ((1, "acc"), (1, "rej")), 0.5, 3)
    assert GenParams.from_dict(p.to_dict()) == p
