"""Command-line entry point ``awa2uba``.

Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .campaign import CampaignConfig, default_campaign, replay
from .constructions import PreconditionError, build, resolve_algorithm, u_construct
from .core import WeaknessError
from .io import ParseError, SemanticError, parse_awa, parse_hoa, print_hoa, stats
from .lasso import LassoWord
from .semantics import (awa_accepts, distance_profile, preorders_from_distances,
                        unique_sequence)
from .verification import (ResourceLimitError, ambiguity_check, bounded_language_diff,
                           enumerate_lasso_macroruns, prune)

OK, CHECK_FAILED, USAGE, RESOURCE = 0, 1, 2, 3
ALGOS = ("mh", "brv", "bu", "u", "auto")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str):
    return parse_awa(_read(path)).awa


def _lasso(text: str, alphabet) -> LassoWord:
    w = LassoWord.parse(text)
    unknown = w.letters() - set(alphabet)
    if unknown:
        raise ValueError(f"letters {sorted(unknown)} are not in the alphabet")
    return w


def _fmt(s) -> str:
    return "{" + ",".join(str(q) for q in sorted(s)) + "}"


def cmd_build(args) -> int:
    a = _load(args.input)
    b = build(a, args.algo)
    if args.prune_unreachable_to_acceptance:
        b = prune(b)
    text = print_hoa(b, names=args.names)
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.stats:
        algo = resolve_algorithm(a, args.algo)
        print(json.dumps(stats(b, a, algo)), file=sys.stderr if not args.output else sys.stdout)
    return OK


def cmd_eval(args) -> int:
    a = _load(args.input)
    state = a.initial if args.state is None else args.state
    if state not in a.state_set:
        raise ValueError(f"unknown state {state}")
    print("accept" if awa_accepts(a, state, _lasso(args.lasso, a.alphabet)) else "reject")
    return OK


def cmd_trace(args) -> int:
    a = _load(args.input)
    w = _lasso(args.lasso, a.alphabet)
    rw = unique_sequence(a, w)
    dp = distance_profile(a, w, rw)
    pp = preorders_from_distances(a, dp)
    print(f"lasso {w}  accepted={a.initial in rw[0]}")
    print("SCCs " + " ".join(f"C{i}={_fmt(c)}{'(acc)' if acc else '(rej)'}" for i, (c, acc) in
                             enumerate(zip(a.scc.round_robin, a.scc.round_robin_accepting))))
    for i in range(w.length):
        dist = ",".join(f"{q}:{d}" for q, d in dp[i].items())
        pos = " ".join(po.render() for po in pp[i])
        print(f"{i:3d} {w[i]}  Q1={_fmt(rw[i])}  d={{{dist}}}  preorders={pos}")
    if not a.scc.round_robin:
        return OK
    b = u_construct(a)
    runs = enumerate_lasso_macroruns(b, w, True)
    if not runs:
        print("no accepting U-macrorun")
        return OK
    run = runs[0]
    print(f"U-macrorun ({len(runs)} accepting): stem {len(run.stem)}, cycle {len(run.cycle)}")
    for t in range(len(run.stem) + len(run.cycle)):
        mark = "*" if run[t] in b.accepting else " "
        print(f"{t:3d}{mark} {b.states[run[t]]}")
    return OK if len(runs) == 1 else CHECK_FAILED


def cmd_check_unambiguous(args) -> int:
    text = _read(args.input)
    if text.lstrip().startswith("HOA:"):
        b = parse_hoa(text)
    else:
        b = build(parse_awa(text).awa, args.algo)
    witness = ambiguity_check(b)
    if witness is None:
        print("unambiguous")
        return OK
    print(f"ambiguous on {witness.word}")
    print("run1: stem " + " ".join(map(str, witness.run1.stem))
          + " cycle " + " ".join(map(str, witness.run1.cycle)))
    print("run2: stem " + " ".join(map(str, witness.run2.stem))
          + " cycle " + " ".join(map(str, witness.run2.cycle)))
    return CHECK_FAILED


def cmd_diff(args) -> int:
    a = _load(args.input)
    b = build(a, args.algo)
    report = bounded_language_diff(a, b, args.max_prefix, args.max_period)
    if report.equivalent:
        print(f"equivalent on grid ({report.checked} lassos, |u|<={args.max_prefix}, "
              f"|v|<={args.max_period})")
        return OK
    side = "automaton only" if report.awa_side else "construction only"
    print(f"differ on {report.witness} (accepted by {side})")
    return CHECK_FAILED


def cmd_campaign(args) -> int:
    cfg = CampaignConfig()
    if args.algos:
        cfg.algorithms = tuple(args.algos.split(","))
    if args.expect_ambiguous:
        cfg.expect_ambiguous = tuple(args.expect_ambiguous.split(","))
    if args.require_unambiguous:
        cfg.require_unambiguous = tuple(args.require_unambiguous.split(","))
    if args.lassos is not None:
        cfg.lassos_per_automaton = args.lassos

    def progress(rec):
        if not args.quiet:
            status = "ok" if rec.passed else "FAIL"
            print(f"[{rec.index:4d}] {status} sizes={rec.sizes}", file=sys.stderr)

    artifacts = Path(args.artifacts) if args.artifacts else None
    report = default_campaign(args.count, args.states, args.alphabet, args.seed, cfg,
                              artifacts, progress)
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    failed = [r for r in report.records if not r.passed]
    print(f"{len(report.records)} automata, {len(failed)} failed")
    for r in failed:
        for f in r.failures:
            print(f"  #{r.index}: {f}")
    for name in cfg.expect_ambiguous:
        hits = sum(1 for r in report.records if r.ambiguity.get(name) is False)
        print(f"{name}: {hits} ambiguous instance(s)")
        if not hits:
            return CHECK_FAILED
    if failed:
        return CHECK_FAILED
    return RESOURCE if report.resource_limited else OK


def cmd_replay(args) -> int:
    rec, old = replay(Path(args.artifact))
    same = sorted(rec.failures) == sorted(old["failures"])
    print(f"replayed case {rec.index}: {'pass' if rec.passed else 'fail'} "
          f"({'same verdict' if same else 'verdict changed'})")
    for f in rec.failures:
        print(f"  {f}")
    if rec.resource_limits:
        return RESOURCE
    return OK if rec.passed else CHECK_FAILED


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="awa2uba", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", help="translate an .awa file to HOA")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.add_argument("--stats", action="store_true", help="print size statistics as JSON")
    s.add_argument("--names", action="store_true", help="label states with their macrostates")
    s.add_argument("--prune-unreachable-to-acceptance", action="store_true")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("eval", help="decide membership of a lasso word")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--state", type=int)
    s.add_argument("--lasso", required=True, help='e.g. "a b;b a" for ab(ba)^w')
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("trace", help="show acceptance sets, distances, preorders and the U-run")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--lasso", required=True)
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("check-unambiguous", help="look for two accepting runs on one word")
    s.add_argument("-i", "--input", required=True, help=".hoa file, or .awa to build first")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.set_defaults(func=cmd_check_unambiguous)

    s = sub.add_parser("diff", help="compare a construction with the automaton on a lasso grid")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.add_argument("--max-prefix", type=int, default=3)
    s.add_argument("--max-period", type=int, default=4)
    s.set_defaults(func=cmd_diff)

    s = sub.add_parser("campaign", help="random differential campaign")
    s.add_argument("--seed", type=int, default=2024)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--states", type=int, default=5)
    s.add_argument("--alphabet", type=int, default=2)
    s.add_argument("--algos", help="comma-separated, default mh,brv,bu,u")
    s.add_argument("--expect-ambiguous", help="constructions expected to be ambiguous somewhere")
    s.add_argument("--require-unambiguous",
                   help="constructions that must be unambiguous, default bu,u,safety")
    s.add_argument("--lassos", type=int, help="lassos sampled per automaton")
    s.add_argument("--out", help="write the JSON report here")
    s.add_argument("--artifacts", help="directory for failure artifacts")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_campaign)

    s = sub.add_parser("replay", help="re-run a failure artifact")
    s.add_argument("--artifact", required=True)
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (ParseError, SemanticError, WeaknessError, PreconditionError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return RESOURCE


if __name__ == "__main__":
    sys.exit(main())
