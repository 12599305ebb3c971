"""Differential and bound-audit campaigns over generated automata."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .constructions import build, resolve_algorithm
from .core import Awa
from .generate import GenParams, corpus_params, random_weak_awa
from .io import parse_awa, print_awa
from .lasso import LassoWord, lasso_grid
from .preorder import tpo
from .semantics import (acceptance_table, check_distance_rules, check_preorder_step,
                        dag_distance, distance_profile, preorders_from_distances,
                        unique_sequence)
from .verification import (ResourceLimitError, ambiguity_check, bounded_language_diff,
                           check_breakpoint_countdown, check_three_item_correspondence,
                           enumerate_lasso_macroruns, validate_ambiguity_witness)


@dataclass
class CampaignConfig:
    algorithms: tuple = ("mh", "brv", "bu", "u")
    max_prefix: int = 3
    max_period: int = 4
    lassos_per_automaton: int = 20
    sample_prefix: int = 2
    sample_period: int = 3
    dag_depth: int = 6
    dag_max_states: int = 4
    run_limit: int = 10_000
    require_unambiguous: tuple = ("bu", "u", "safety")
    expect_ambiguous: tuple = ()  # inverted assertion, e.g. ("brv",)

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in self.__dict__.items()}

    @classmethod
    def from_dict(cls, d: dict) -> CampaignConfig:
        return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in d.items()})


@dataclass
class Record:
    index: int
    params: dict | None
    sizes: dict = field(default_factory=dict)
    diff: dict = field(default_factory=dict)
    ambiguity: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    resource_limits: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return dict(self.__dict__, passed=self.passed)


@dataclass
class CampaignReport:
    records: list
    config: CampaignConfig
    artifacts: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def resource_limited(self) -> bool:
        return any(r.resource_limits for r in self.records)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "config": self.config.to_dict(),
                "records": [r.to_dict() for r in self.records],
                "artifacts": [str(p) for p in self.artifacts]}


def sample_lassos(a: Awa, count: int, max_prefix: int, max_period: int, seed: int) -> list:
    """Up to `count` grid lassos, accepted ones first, in a seeded order."""
    grid = lasso_grid(a.alphabet, max_prefix, max_period)
    random.Random(seed).shuffle(grid)
    accepted, rejected = [], []
    for w in grid:
        (accepted if acceptance_table(a, w)[a.initial, 0] else rejected).append(w)
    return (accepted + rejected)[:count]


def _semantic_checks(a: Awa, w: LassoWord, cfg: CampaignConfig, rec: Record):
    """Distance rules, preorder steps and the run-DAG cross-check on one lasso."""
    rw = unique_sequence(a, w)
    dp = distance_profile(a, w, rw)
    bad = check_distance_rules(a, w, rw, dp)
    if bad:
        rec.failures.append(f"distance rules violated on {w}: {bad[:3]}")
    pp = preorders_from_distances(a, dp)
    for i in range(w.length):
        j = w.next_position(i)
        for k in range(len(a.scc.round_robin)):
            if not check_preorder_step(a, k, rw[i], pp[i][k], rw[j], pp[j][k], w[i]):
                rec.failures.append(f"preorder step {i} of SCC {k} fails on {w}")
    if a.n <= cfg.dag_max_states:
        for i in range(w.length):
            for q, d in dp[i].items():
                got = dag_distance(a, w, rw, q, i, cfg.dag_depth)
                want = d if d <= cfg.dag_depth else None
                if got != want:
                    rec.failures.append(
                        f"run-DAG distance {got} != fixpoint {d} at ({q}, {i}) on {w}")
    return dp


def check_automaton(a: Awa, index: int, cfg: CampaignConfig, params: dict | None = None,
                    seed: int = 0) -> Record:
    rec = Record(index, params)
    single = len(a.scc.components) == 1
    very_weak = all(len(c) == 1 for c in a.scc.components)
    built = {}
    for algo in cfg.algorithms:
        name = resolve_algorithm(a, algo)
        if name in built:
            continue
        b = build(a, name)
        built[name] = b
        rec.sizes[name] = len(b)
        report = bounded_language_diff(a, b, cfg.max_prefix, cfg.max_period)
        rec.diff[name] = "equivalent" if report.equivalent else str(report.witness)
        if not report.equivalent:
            rec.failures.append(f"{name}: language differs on {report.witness}")
            rec.witnesses.append({"kind": "diff", "algo": name, "lasso": str(report.witness)})
        wants = name in cfg.require_unambiguous
        inverted = name in cfg.expect_ambiguous
        if wants or inverted:
            amb = ambiguity_check(b)
            rec.ambiguity[name] = amb is None
            if amb is not None:
                if not validate_ambiguity_witness(b, amb):
                    rec.failures.append(f"{name}: ambiguity witness does not replay")
                rec.witnesses.append({"kind": "ambiguity", "algo": name,
                                      "lasso": str(amb.word)})
                if wants:
                    rec.failures.append(f"{name}: ambiguous on {amb.word}")

    n = a.n
    if single and "u" in built:
        rec.bounds["u<=4tpo"] = len(built["u"]) <= 4 * tpo(n)
    if single and "bu" in built:
        rec.bounds["bu<=4n*tpo"] = len(built["bu"]) <= 4 * n * tpo(n)
    if very_weak and "u" in built:
        rec.bounds["u<=4n*2^n"] = len(built["u"]) <= 4 * n * 2 ** n
    for key, ok in rec.bounds.items():
        if not ok:
            rec.failures.append(f"bound {key} violated")

    if cfg.lassos_per_automaton:
        lassos = sample_lassos(a, cfg.lassos_per_automaton, cfg.sample_prefix,
                               cfg.sample_period, seed)
        counts = {"lassos": len(lassos), "accepted": 0}
        for w in lassos:
            accepted = acceptance_table(a, w)[a.initial, 0]
            counts["accepted"] += accepted
            dp = _semantic_checks(a, w, cfg, rec)
            try:
                if "u" in built:
                    runs = enumerate_lasso_macroruns(built["u"], w, True, cfg.run_limit)
                    if len(runs) != int(accepted):
                        rec.failures.append(f"u: {len(runs)} accepting macroruns on {w}")
                    for run in runs:
                        v = check_three_item_correspondence(a, built["u"], run, dp)
                        if v is not None:
                            rec.failures.append(f"u: correspondence item {v.item} "
                                                f"fails at {v.time} on {w}: {v.detail}")
                if "bu" in built:
                    for run in enumerate_lasso_macroruns(built["bu"], w, True, cfg.run_limit):
                        t = check_breakpoint_countdown(built["bu"], run, dp)
                        if t is not None:
                            rec.failures.append(f"bu: countdown fails at {t} on {w}")
            except ResourceLimitError as exc:
                rec.resource_limits.append(f"{w}: {exc}")
        rec.checks = counts
    return rec


def write_artifact(directory: Path, a: Awa, rec: Record, cfg: CampaignConfig) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "input.awa").write_text(print_awa(a), encoding="utf-8")
    doc = {"record": rec.to_dict(), "config": cfg.to_dict()}
    (directory / "record.json").write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return directory


def run_campaign(params_list, cfg: CampaignConfig | None = None,
                 artifact_dir: Path | None = None, progress=None) -> CampaignReport:
    cfg = cfg or CampaignConfig()
    report = CampaignReport([], cfg)
    for i, p in enumerate(params_list):
        a = random_weak_awa(p)
        rec = check_automaton(a, i, cfg, p.to_dict(), seed=p.seed)
        report.records.append(rec)
        if artifact_dir is not None and (rec.failures or rec.witnesses):
            report.artifacts.append(write_artifact(artifact_dir / f"case-{i:04d}", a, rec, cfg))
        if progress:
            progress(rec)
    return report


def default_campaign(count: int = 200, states: int = 5, alphabet: int = 2, seed: int = 2024,
                     cfg: CampaignConfig | None = None, artifact_dir: Path | None = None,
                     progress=None) -> CampaignReport:
    return run_campaign(corpus_params(count, states, alphabet, seed), cfg, artifact_dir, progress)


def replay(directory: Path) -> tuple:
    """Re-run the checks stored in an artifact; returns (new record, old record dict)."""
    doc = json.loads((directory / "record.json").read_text(encoding="utf-8"))
    a = parse_awa((directory / "input.awa").read_text(encoding="utf-8")).awa
    cfg = CampaignConfig.from_dict(doc["config"])
    old = doc["record"]
    seed = old["params"]["seed"] if old.get("params") else 0
    rec = check_automaton(a, old["index"], cfg, old.get("params"), seed=seed)
    return rec, old


__all__ = ["CampaignConfig", "CampaignReport", "GenParams", "Record", "check_automaton",
           "default_campaign", "replay", "run_campaign", "sample_lassos", "write_artifact"]


def _has_choice(f) -> bool:
    from .posbool import And, Or
    if isinstance(f, Or):
        return True
    return isinstance(f, And) and any(_has_choice(c) for c in f.children)


def search_brv_ambiguity(max_seeds: int = 500, density: float = 0.4):
    """Look for a 5-state AWA with two accepting states whose three-state
    rejecting SCC contains exactly one state with a disjunctive transition,
    and whose BRV automaton is ambiguous.

    Yields ``(params, awa, witness)`` for every hit, in seed order.
    """
    from .constructions import brv_construct
    profile = ((1, "acc"), (3, "rej"), (1, "acc"))
    for seed in range(max_seeds):
        p = GenParams(5, 2, profile, density, seed)
        a = random_weak_awa(p)
        if a.n != 5 or len(a.accepting) != 2:
            continue
        choosy = [q for q in a.states if any(_has_choice(a.delta[q, x]) for x in a.alphabet)]
        if len(choosy) != 1 or choosy[0] not in a.scc.rejecting_states:
            continue
        b = brv_construct(a)
        witness = ambiguity_check(b)
        if witness is not None:
            yield p, a, b, witness
