"""Command-line interface: ``droopjr <subcommand> ...``.

Exit codes: 0 on success, 1 on bad input, 2 when an internal assertion
or a witness-corpus scenario regresses.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import rules
from .axioms import AXIOMS, AxiomId, check
from .core import DROOP, HARE, QUOTAS, ElectionFormatError, InstanceTooLarge, Quota, parse_election, serialize_election
from .harness import CORPUS, GridConfig, WitnessRegression, emit_csv, emit_plot, run_experiment, witness_corpus
from .priceability import find_price_system
from .rules import TieBreak
from .sampling import MODELS, URN, SamplerConfig, sample_election

RULES = (
    "av",
    "pav",
    "ls-pav",
    "gjcr",
    "gcr",
    "mes",
    "ees",
    "mes-completed",
    "ees-completed",
    "seq-phragmen",
    "monroe",
    "greedy-monroe",
)


def _committee(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"committee must be comma-separated indices, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _scale(text: str):
    if text == "desk":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("scale must be 'desk' or a positive number") from None


def _tie(text: str) -> TieBreak:
    if text == "lex":
        return rules.LEXICOGRAPHIC
    if text.startswith("script:"):
        return TieBreak.from_json(Path(text[len("script:"):]).read_text())
    raise argparse.ArgumentTypeError("tie must be 'lex' or 'script:<file>'")


def _load(path: str):
    return parse_election(Path(path).read_text(encoding="utf-8"))


def cmd_rule(args) -> int:
    e = _load(args.election)
    q = Quota.parse(args.quota)
    name = args.rule
    if name == "av":
        out = rules.av(e, args.tie)
    elif name == "pav":
        out = rules.pav_exact(e, args.tie, record_all=True)
    elif name == "ls-pav":
        out = rules.ls_pav(e, args.epsilon, tie=args.tie)
    elif name == "gjcr":
        out = rules.gjcr(e, q, args.tie)
    elif name == "gcr":
        out = rules.gcr(e, q, args.tie)
    elif name in ("mes", "ees", "mes-completed", "ees-completed"):
        variant = name.split("-")[0]
        budget = args.budget
        if budget is None:
            budget = rules.droop_budget(e) if q is DROOP else Fraction(1)
        if name.endswith("completed"):
            out = rules.mes_completed(e, budget, variant, args.tie)
        else:
            out = rules.mes(e, budget, variant, args.tie)
    elif name == "seq-phragmen":
        out = rules.seq_phragmen(e, tie=args.tie)
    elif name == "monroe":
        out = rules.monroe(e, q, args.tie)
    else:
        out = rules.greedy_monroe(e, q, args.tie)
    sys.stdout.write(out.serialize())
    return 0


def cmd_check(args) -> int:
    e = _load(args.election)
    axioms = AXIOMS if args.axiom == "all" else (AxiomId.parse(args.axiom),)
    quotas = QUOTAS if args.quota == "both" else (Quota.parse(args.quota),)
    for a in axioms:
        for q in quotas:
            w = check(e, args.committee, a, q)
            if args.machine:
                print(f"axiom={a} quota={q} result=PASS" if w is None else w.serialize())
            elif w is None:
                print(f"{a} {q} PASS")
            else:
                T = ",".join(map(str, sorted(w.T)))
                S = ",".join(map(str, sorted(w.S)))
                print(f"{a} {q} FAIL ell={w.ell} T={{{T}}} S={{{S}}}")
    return 0


def cmd_price(args) -> int:
    e = _load(args.election)
    ps = find_price_system(e, args.committee)
    if ps is None:
        print("NOT PRICEABLE")
    else:
        print("\n".join(ps.to_lines(e.m)))
    return 0


def cmd_sample(args) -> int:
    if args.model == URN:
        param = args.alpha
    else:
        param = args.phi
    cfg = SamplerConfig(args.model, args.p, args.m, args.n, args.seed, param, args.per_candidate)
    e = sample_election(cfg, args.k)
    text = (
        f"# model={cfg.model} p={cfg.p} param={cfg.param} per_candidate={int(cfg.per_candidate)} "
        f"seed={cfg.seed}\n" + serialize_election(e)
    )
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_experiment(args) -> int:
    cfg = GridConfig.preset(
        args.id,
        scale=args.scale,
        seed=args.seed,
        workers=args.workers,
        repetitions=args.reps,
        step=args.step,
        bare_mes=args.bare_mes,
    )
    records = list(run_experiment(cfg))
    Path(args.out).write_text(emit_csv(records), encoding="utf-8")
    if args.plot:
        Path(args.plot).write_text(emit_plot(records, title=f"Experiment {args.id}"), encoding="utf-8")
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_witness(args) -> int:
    names = list(CORPUS) if args.name == "all" else [args.name]
    status = 0
    for name in names:
        try:
            res = witness_corpus(name)
        except WitnessRegression as exc:
            print(f"{name} REGRESSION {exc}")
            status = 2
            continue
        print(f"{name} OK  {res.claim}")
        for line in res.lines:
            print(f"  {line}")
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="droopjr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rule", help="run a voting rule on an election file")
    p.add_argument("--rule", required=True, choices=RULES)
    p.add_argument("--quota", default="hare", choices=[q.value for q in QUOTAS])
    p.add_argument("--election", required=True)
    p.add_argument("--budget", type=_fraction, help="per-voter budget for equal shares (default 1, or the Droop budget)")
    p.add_argument("--epsilon", type=_fraction, help="ls-pav improvement threshold (default 1/k^2)")
    p.add_argument("--tie", type=_tie, default=rules.LEXICOGRAPHIC, help="lex or script:<json file>")
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("check", help="check proportionality axioms for a committee")
    p.add_argument("--axiom", default="all", help="JR, PJR, EJR, PJR+, EJR+, FPJR, FJR or all")
    p.add_argument("--quota", default="both", choices=["hare", "droop", "both"])
    p.add_argument("--election", required=True)
    p.add_argument("--committee", required=True, type=_committee)
    p.add_argument("--machine", action="store_true", help="emit serialized witness records")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("price", help="decide priceability of a committee")
    p.add_argument("--election", required=True)
    p.add_argument("--committee", required=True, type=_committee)
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("sample", help="sample an election file")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--phi", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--per-candidate", action="store_true", help="per-candidate resampling variant")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment")
    p.add_argument("--id", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--scale", type=_scale, default=None, help="'desk' (default) or a factor; 1 = full grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--reps", type=int, help="override the repetition count")
    p.add_argument("--step", type=float, help="override the phi/alpha/p grid step")
    p.add_argument("--bare-mes", action="store_true", help="experiment 2: do not complete MES")
    p.add_argument("--out", required=True)
    p.add_argument("--plot")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("witness", help="replay counterexample scenarios")
    p.add_argument("--name", default="all", choices=["all", *CORPUS])
    p.set_defaults(func=cmd_witness)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 2
    except (ElectionFormatError, InstanceTooLarge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
