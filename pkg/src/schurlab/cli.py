"""schurlab command line: gen, chern, schur, classify, positivity, verify.

Every command writes sorted-key JSON to --output (default stdout). Exit codes:
0 success, 1 error, 2 counterexample (positivity) or red/falsified suite (verify).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .curvature import CLASSES, ABFactorization, CurvatureTensor, SplitSpec, chern_forms, classify, generate, schur_form
from .hermitian import CUTOFF
from .multilinear import Form
from .positivity import (
    DEFAULT_RESTARTS,
    DEFAULT_SAMPLES,
    DEFAULT_SWEEPS,
    FalsificationError,
    is_nonnegative,
    is_positive,
    is_weakly_positive,
)
from .symfunc import pad, partitions
from .verify import SUITES, resolve_threads, run_suite

NORMALIZATION = "Chern forms are the degree-k parts of det(Id + sqrt(-1) R); the (2 pi)^(-k) factor is dropped"

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2

SUITE_ALIASES = {"all": list(SUITES)}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _dump(obj, output: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if output in (None, "-", "stdout"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read JSON from {path}: {exc}") from None


def _load_curvature(path: str) -> CurvatureTensor:
    """A bare curvature JSON or the bundle written by ``gen``."""
    data = _load_json(path)
    if isinstance(data, dict) and "curvature" in data:
        data = data["curvature"]
    return CurvatureTensor.from_json(data)


def _load_bundle(path: str):
    data = _load_json(path)
    if isinstance(data, dict) and "curvature" in data:
        f = data.get("factorization")
        split = data.get("split")
        return (
            CurvatureTensor.from_json(data["curvature"]),
            ABFactorization.from_json(f) if f else None,
            SplitSpec.from_json(split) if split else None,
        )
    return CurvatureTensor.from_json(data), None, None


def _load_form(path: str) -> Form:
    data = _load_json(path)
    if isinstance(data, dict) and "form" in data:
        data = data["form"]
    elif isinstance(data, dict) and "forms" in data:
        if len(data["forms"]) != 1:
            raise CliError("input holds several forms; extract one")
        data = data["forms"][0]["form"]
    return Form.from_json(data)


def _axes(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"bad axis list {text!r}; expected comma-separated integers") from None


def _split_from_flags(args) -> SplitSpec | None:
    u, e1 = _axes(args.u_axes), _axes(args.e1_axes)
    if u is not None and e1 is not None:
        raise CliError("--u-axes and --e1-axes are mutually exclusive")
    if u is not None:
        return SplitSpec("type1", u)
    if e1 is not None:
        return SplitSpec("type2", e1)
    return None


def _partition(text: str, r: int) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise CliError(f"bad partition {text!r}") from None
    k = sum(parts)
    padded = pad(parts, k) if k else ()
    if k and padded not in partitions(k, r):
        raise CliError(f"{parts} is not a partition in Lambda({k}, {r})")
    return padded


# -- commands ------------------------------------------------------------------------------
def cmd_gen(args) -> int:
    split = _split_from_flags(args)
    R, f, split = generate(args.cls, args.n, args.r, args.seed, split=split, N=args.N)
    _dump({"curvature": R.to_json(), "factorization": f.to_json(), "split": split.to_json() if split else None}, args.output)
    if split is None:
        print("split: none", file=sys.stderr)
    else:
        print(f"split: {split.kind} {','.join(map(str, split.indices)) or '(empty)'}", file=sys.stderr)
    return EXIT_OK


def cmd_chern(args) -> int:
    R = _load_curvature(args.curvature)
    forms = chern_forms(R)
    _dump({"normalization": NORMALIZATION, "chern": [{"k": k, "form": c.to_json()} for k, c in enumerate(forms)]}, args.output)
    return EXIT_OK


def cmd_schur(args) -> int:
    R = _load_curvature(args.curvature)
    if (args.partition is None) == (args.all_k is None):
        raise CliError("give exactly one of --partition and --all-k")
    lams = [_partition(args.partition, R.r)] if args.partition is not None else partitions(args.all_k, R.r)
    chern = chern_forms(R)
    out = [{"partition": list(lam), "form": schur_form(lam, R, chern).to_json()} for lam in lams]
    _dump({"normalization": NORMALIZATION, "forms": out}, args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    R, f, gen_split = _load_bundle(args.curvature)
    hint = _split_from_flags(args) if (args.u_axes is not None or args.e1_axes is not None) else None
    if hint is None and args.hint and gen_split is not None:
        hint = gen_split
    verdict = classify(R, hints=hint, restarts=args.restarts, seed=args.seed, factorization=f)
    _dump(verdict.to_json(), args.output)
    return EXIT_OK


def cmd_positivity(args) -> int:
    u = _load_form(args.form)
    cutoff = args.tolerance
    if args.mode == "positive":
        v = is_positive(u, cutoff)
        out = v.to_json()
    elif args.mode == "nonneg":
        v, alphas = is_nonnegative(u, cutoff)
        out = v.to_json()
        if alphas is not None:
            out["decomposition"] = [a.to_json() for a in alphas]
    else:
        v = is_weakly_positive(u, restarts=args.restarts, sweeps=args.sweeps, samples=args.samples, seed=args.seed, cutoff=cutoff)
        out = v.to_json()
    _dump(out, args.output)
    return EXIT_COUNTEREXAMPLE if v.is_counterexample else EXIT_OK


def cmd_verify(args) -> int:
    names = []
    for item in args.suite or ["all"]:
        for name in item.split(","):
            if name in SUITE_ALIASES:
                names += SUITE_ALIASES[name]
            elif name in SUITES:
                names.append(name)
            else:
                raise CliError(f"unknown suite {name!r}; expected all or one of {', '.join(SUITES)}")
    names = list(dict.fromkeys(names))
    threads = resolve_threads(args.threads)
    reports = []
    try:
        for name in names:
            reports.append(run_suite(name, args.trials, args.seed, threads))
    except FalsificationError as exc:
        _dump({"falsified": str(exc), "bundle": exc.bundle, "reports": [r.to_json(args.timing) for r in reports]}, args.output)
        print(f"falsification: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    green = all(r.green for r in reports)
    _dump({"green": green, "reports": [r.to_json(args.timing) for r in reports]}, args.output)
    for r in reports:
        print(f"{r.suite}: {r.passes}/{r.trials} {'green' if r.green else 'RED'}", file=sys.stderr)
    return EXIT_OK if green else EXIT_COUNTEREXAMPLE


# -- parser --------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, default=CUTOFF, help="relative zero-eigenvalue cutoff")
    common.add_argument("--threads", default="1", help="worker processes for suites, or 'auto'")
    common.add_argument("--output", default=None, help="output path (default stdout)")

    parser = _Parser(prog="schurlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def split_flags(p):
        p.add_argument("--u-axes", default=None, help="type I split: comma list of base axes in U")
        p.add_argument("--e1-axes", default=None, help="type II split: comma list of frame indices in E1")

    p = sub.add_parser("gen", parents=[common], help="random curvature of a positivity class")
    p.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, default=None, help="number of factor columns")
    split_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("chern", parents=[common], help="Chern forms of a curvature")
    p.add_argument("curvature")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("schur", parents=[common], help="Schur forms of a curvature")
    p.add_argument("curvature")
    p.add_argument("--partition", default=None, help="comma-separated parts, e.g. 2,1")
    p.add_argument("--all-k", type=int, default=None, help="every partition of weight K")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("classify", parents=[common], help="positivity classes of a curvature")
    p.add_argument("curvature")
    p.add_argument("--hint", action="store_true", help="use the split stored in a gen bundle")
    p.add_argument("--restarts", type=int, default=32)
    split_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("positivity", parents=[common], help="positivity of a real (k,k)-form")
    p.add_argument("form")
    p.add_argument("--mode", choices=("positive", "nonneg", "weak"), default="positive")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--sweeps", type=int, default=DEFAULT_SWEEPS)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", action="append", default=None, help=f"all or one of {', '.join(SUITES)}; repeatable")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall_ms (breaks byte-determinism)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help return their code instead of exiting
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, ValueError, TypeError, KeyError, RuntimeError) as exc:
        print(f"schurlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
