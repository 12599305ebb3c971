import json

from awa2uba.campaign import CampaignConfig, replay, run_campaign
from awa2uba.generate import GenParams, corpus_params


def test_empty_grid():
    report = run_campaign([])
    assert report.records == [] and report.passed


def test_small_campaign_is_deterministic():
    params = corpus_params(6, max_states=3, seed=3)
    cfg = CampaignConfig(lassos_per_automaton=5)
    r1 = run_campaign(params, cfg)
    r2 = run_campaign(params, cfg)
    assert r1.passed
    assert json.dumps(r1.to_dict(), sort_keys=True) == json.dumps(r2.to_dict(), sort_keys=True)


def test_brv_ambiguity_found_and_artifact_replays(tmp_path):
    params = [GenParams(5, 2, ((1, "acc"), (3, "rej"), (1, "acc")), 0.4, 0)]
    cfg = CampaignConfig(algorithms=("brv", "u"), lassos_per_automaton=0,
                         require_unambiguous=("brv", "u"))
    report = run_campaign(params, cfg, artifact_dir=tmp_path)
    assert not report.passed
    assert report.records[0].ambiguity == {"brv": False, "u": True}
    (case,) = report.artifacts
    assert (case / "input.awa").exists()
    rec, old = replay(case)
    assert sorted(rec.failures) == sorted(old["failures"]) and rec.failures
    assert old["params"]["seed"] == 0


def test_inverted_assertion_is_not_a_failure():
    params = [GenParams(5, 2, ((1, "acc"), (3, "rej"), (1, "acc")), 0.4, 0)]
    cfg = CampaignConfig(algorithms=("brv",), lassos_per_automaton=0, expect_ambiguous=("brv",))
    report = run_campaign(params, cfg)
    assert report.passed and report.records[0].ambiguity["brv"] is False
