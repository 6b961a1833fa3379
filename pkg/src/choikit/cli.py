"""Command-line front end.

    choikit transform MAP (--sigma id|transpose|ad [--s FILE] | --sigma-file FILE) [--out FILE]
    choikit check MAP --cone cp|p|sp|ppt [--k K]
    choikit verify --suite NAME|all
    choikit gen --kind cp|spk|positive|iso|ad|form

Reports are JSON on stdout (or ``--out``); human-readable summaries go to
stderr and are silenced by ``--quiet``.

Exit codes: 0 success / Member, 1 NonMember, 2 parse or usage error,
3 dimension mismatch, 4 Unknown, 5 identity failure.
"""
import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import cones
from . import identities
from . import io
from . import maps as M
from . import sampling as S
from .errors import ChoikitError, DimensionMismatch

EXIT_OK = 0
EXIT_NON_MEMBER = 1
EXIT_PARSE = 2
EXIT_DIMS = 3
EXIT_UNKNOWN = 4
EXIT_FAILED = 5

VERDICT_EXIT = {
    cones.Status.MEMBER: EXIT_OK,
    cones.Status.NON_MEMBER: EXIT_NON_MEMBER,
    cones.Status.UNKNOWN: EXIT_UNKNOWN,
}

SUITE_CHOICES = ("table1", "prop51", "prop52", "thm33", "thm43", "prop46",
                 "choi", "weyl", "orthonormal", "pairing", "ad", "choi_theorem", "cones", "all")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = None
    budget: int = cones.DEFAULT_BUDGET
    tol: float = None
    m: int = None
    n: int = None
    k: int = None

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be positive")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        for name in ("m", "n", "k"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")

    def as_dict(self):
        return {"seed": self.seed, "trials": self.trials, "budget": self.budget,
                "tol": self.tol, "m": self.m, "n": self.n, "k": self.k}


def _default_seed():
    env = os.environ.get("CHOIKIT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise argparse.ArgumentTypeError(f"CHOIKIT_SEED must be an integer, got {env!r}")


def _config(args):
    seed = args.seed if args.seed is not None else _default_seed()
    return RunConfig(seed=seed, trials=args.trials, budget=args.budget, tol=args.tol,
                     m=args.m, n=args.n, k=args.k)


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


# commands

def cmd_transform(args, config):
    phi = io.map_from_json(io.load_file(args.map))
    if args.sigma_file:
        sigma = io.map_from_json(io.load_file(args.sigma_file))
    elif args.sigma == "ad":
        if not args.s:
            raise io.ParseError("--sigma ad needs --s FILE with the matrix s")
        sigma = M.ad_map(io.matrix_from_json(io.load_file(args.s)))
    else:
        sigma = io.builtin_map(args.sigma, {"dim": phi.dim_in})
    if sigma.dim_in != phi.dim_in or sigma.dim_out != phi.dim_in:
        raise DimensionMismatch(
            f"sigma maps M_{sigma.dim_in} -> M_{sigma.dim_out}, but the map acts on M_{phi.dim_in}")
    c = M.choi_sigma(phi, sigma)
    _emit(args, io.dumps(io.operator_to_json(c)))
    _say(args, f"C^sigma written: {c.dim_a * c.dim_b}x{c.dim_a * c.dim_b}")
    return EXIT_OK


def cmd_check(args, config):
    phi = io.map_from_json(io.load_file(args.map))
    k = config.k if config.k is not None else 1
    seed, budget = config.seed, config.budget
    if args.cone == "cp":
        verdict = cones.is_cp(phi)
    elif args.cone == "p":
        verdict = cones.is_k_positive(phi, k, budget, seed)
    elif args.cone == "sp":
        verdict = cones.is_k_superpositive(phi, k, budget, seed)
    else:
        verdict = cones.is_ppt(M.choi(phi))
    _emit(args, io.dumps(io.verdict_to_json(verdict, seed=seed, budget=budget)))
    _say(args, f"{verdict.cone}: {verdict.status.value} ({verdict.detail})")
    return VERDICT_EXIT[verdict.status]


def _print_table(args, report):
    if args.quiet:
        return
    print(f"[{report['suite']}] trials={report['trials']} tol={report['tol']:.0e} "
          f"{'PASS' if report['passed'] else 'FAIL'}", file=sys.stderr)
    for row, res in report["rows"].items():
        print(f"  {row:<28} {res:.3e}", file=sys.stderr)


def cmd_verify(args, config):
    names = identities.ALL_SUITES if args.suite == "all" else (args.suite,)
    options = {"m": config.m, "n": config.n, "k": config.k, "budget": config.budget}
    if args.sigma:
        options["sigma"] = args.sigma
    reports = []
    for name in names:
        rep = identities.run_suite(name, config.seed, config.trials, config.tol, **options)
        _print_table(args, rep)
        reports.append(rep)
    passed = all(r["passed"] for r in reports)
    out = {"suite": args.suite, "config": config.as_dict(), "passed": passed,
           "reports": {r["suite"]: _summary(r) for r in reports}}
    _emit(args, io.dumps(out))
    if passed:
        return EXIT_OK
    repro = args.repro or f"choikit-repro-{args.suite}-{config.seed}.json"
    command = f"choikit verify --suite {args.suite} --seed {config.seed}"
    if config.trials is not None:
        command += f" --trials {config.trials}"
    for flag in ("m", "n", "k", "tol"):
        if getattr(config, flag) is not None:
            command += f" --{flag} {getattr(config, flag)}"
    if config.budget != cones.DEFAULT_BUDGET:
        command += f" --budget {config.budget}"
    if args.sigma:
        command += f" --sigma {args.sigma}"
    dump = {"command": command, "config": config.as_dict(),
            "failures": {r["suite"]: r["failures"] for r in reports if not r["passed"]}}
    with open(repro, "w") as fh:
        fh.write(io.dumps(dump))
    _say(args, f"identity failure; reproducer written to {repro}")
    return EXIT_FAILED


def _summary(report):
    """The report without the bulky failing instances (those go to the reproducer)."""
    out = {k: v for k, v in report.items() if k != "failures"}
    out["failed_rows"] = [f["row"] for f in report["failures"]]
    return out


def cmd_gen(args, config):
    rng = np.random.default_rng(config.seed)
    m = config.m or 2
    n = config.n or m
    k = config.k or 1
    kind = args.kind
    meta = {"kind": kind, "seed": config.seed}
    if kind == "form":
        form = S.random_symmetric_form(rng, m * m)
        meta["certificate"] = {"symmetric": True, "construction": "G^T G + I",
                               "min_singular_value": float(np.linalg.svd(form.gram, compute_uv=False)[-1])}
        obj = {**io.form_to_json(form), "metadata": meta}
    else:
        if kind == "cp":
            phi, cert = S.random_cp(rng, m, n)
        elif kind == "spk":
            phi, cert = S.random_spk(rng, m, n, k)
        elif kind == "positive":
            phi, cert = S.random_k_positive(rng, m, n, k)
        elif kind == "iso":
            phi = S.random_isomorphism(rng, m)
            cert = {"kind": "full_rank_transfer", "rank": m * m}
        else:
            s = S.random_nonsingular(rng, m)
            phi = M.ad_map(s)
            cert = {"kind": "ad", "s": io.matrix_to_json(s)}
        meta["certificate"] = cert
        obj = io.map_to_json(phi, meta)
    _emit(args, io.dumps(obj))
    _say(args, f"generated {kind}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $CHOIKIT_SEED or 0)")
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--budget", type=int, default=cones.DEFAULT_BUDGET, help="see-saw starts")
    common.add_argument("--m", type=int, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--tol", type=float, default=None, help="override suite tolerances")
    common.add_argument("--out", default=None, help="write the JSON output here instead of stdout")
    common.add_argument("--quiet", action="store_true")

    p = _Parser(prog="choikit", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transform", parents=[common], help="compute C^sigma_phi")
    t.add_argument("map")
    t.add_argument("--sigma", choices=("id", "transpose", "ad"), default="id")
    t.add_argument("--s", default=None, help="matrix file for --sigma ad")
    t.add_argument("--sigma-file", default=None)
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("check", parents=[common], help="cone membership of a map")
    c.add_argument("map")
    c.add_argument("--cone", choices=("cp", "p", "sp", "ppt"), required=True)
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", choices=SUITE_CHOICES, required=True)
    v.add_argument("--sigma", choices=("transpose", "ad"), default=None, help="sigma for the thm43 suite")
    v.add_argument("--repro", default=None, help="reproducer path on failure")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", parents=[common], help="generate a certified random object")
    g.add_argument("--kind", choices=("cp", "spk", "positive", "iso", "ad", "form"), required=True)
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"choikit: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, config)
    except DimensionMismatch as exc:
        print(f"choikit: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIMS
    except io.ParseError as exc:
        print(f"choikit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChoikitError as exc:
        print(f"choikit: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
