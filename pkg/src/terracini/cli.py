"""Command-line front end.

    terracini membership --n 2 --d 4 --points pts.json
    terracini construct rational --n 2 --m 4
    terracini construct elliptic --dprime 2
    terracini probe rnc --dprime 6 --k 1..6 --trials 100
    terracini ah --n 2 --d 4 --k 5 --trials 50
    terracini scan --n 2 --m 3..8 --curve line
    terracini thresholds --n 2 --m 4 --e 1
    terracini replay report.json

Every JSON report embeds the invocation (config.argv) and the resolved seed,
so ``replay`` regenerates it byte for byte.

Exit status: 0 on success, 1 when a construction refuses the parameters,
2 on bad input or internal errors.  TERRACINI_SEED overrides --seed.
"""

import argparse
import json
import os
import secrets
import sys

from . import constructions as cons
from .curves import WeierstrassCurve, curve_from_json, line_curve, rational_normal_curve
from .errors import RefusalError, TerraciniError
from .exact_linalg import RankStrategy
from .fields import GF, QQ, PrimeField
from .reports import SCHEMA, ProbeReport, to_csv
from .terracini_core import PointSet, ah_probe, membership

VERDICT_HEADER = ("rank", "conditions", "ambient_dim", "h0", "h1", "h0_positive",
                  "h1_positive", "member", "certified", "characteristic", "method")
EXAMPLE_HEADER = ("construction", "parameters", "seed", "curve_rank", "curve_conditions",
                  "curve_system_dim", "ambient_rank", "ambient_conditions", "member",
                  "certified")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_range(text):
    """``"3..8"`` -> [3, ..., 8]; ``"4"`` -> [4]; ``"1,3,5"`` -> [1, 3, 5]."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValueError
            return list(range(a, b + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None


def parse_field(text):
    t = text.strip().lower()
    if t in ("q", "qq"):
        return QQ
    for prefix in ("fp:", "fp=", "f_", "gf:"):
        if t.startswith(prefix):
            t = t[len(prefix):]
            break
    else:
        if t.startswith("fp(") and t.endswith(")"):
            t = t[3:-1]
        else:
            raise argparse.ArgumentTypeError(f"bad field {text!r}; use q or fp:<prime>")
    try:
        return GF(int(t))
    except (ValueError, TerraciniError):
        raise argparse.ArgumentTypeError(f"bad field {text!r}; use q or fp:<prime>") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=None,
                        help="q (default) or fp:<prime>")
    common.add_argument("--seed", type=int, default=None, help="64-bit run seed")
    common.add_argument("--fast", action="store_true",
                        help="multi-prime modular ranks instead of fraction-free")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="json (default; csv for scan)")
    common.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = _Parser(prog="terracini", description="Terracini loci of Veronese embeddings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("membership", parents=[common], help="test a point set")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--points", required=True, help="point-set JSON file ('-' for stdin)")

    s = sub.add_parser("construct", help="certified members")
    csub = s.add_subparsers(dest="recipe", required=True, parser_class=_Parser)
    r = csub.add_parser("rational", parents=[common])
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--k", type=int, default=None)
    r.add_argument("--curve", default="line",
                   help="line, rnc, or a curve JSON file")
    e = csub.add_parser("elliptic", parents=[common])
    e.add_argument("--dprime", type=int, required=True)
    e.add_argument("--a", default="1")
    e.add_argument("--b", default="1")
    e.add_argument("--base", default=None, help="x,y base point (needed over Q)")

    s = sub.add_parser("probe", parents=[common], help="emptiness evidence")
    s.add_argument("target", choices=("rnc", "elliptic"))
    s.add_argument("--dprime", type=int, required=True)
    s.add_argument("--k", type=parse_range, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--a", default="1")
    s.add_argument("--b", default="1")
    s.add_argument("--base", default=None)

    s = sub.add_parser("ah", parents=[common], help="general-position defect probe")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=parse_range, required=True)
    s.add_argument("--k", type=parse_range, required=True)
    s.add_argument("--trials", type=int, default=50)

    s = sub.add_parser("scan", parents=[common], help="thresholds + examples over m")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=parse_range, required=True)
    s.add_argument("--curve", choices=("line", "rnc"), default="line")

    s = sub.add_parser("thresholds", parents=[common], help="dimension counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=parse_range, required=True)
    s.add_argument("--e", type=int, default=1)

    s = sub.add_parser("replay", help="regenerate a JSON report from its config")
    s.add_argument("report", help="report file written by an earlier run")
    s.add_argument("--output", "-o", default=None)
    return p


_DROPPED = ("--seed", "--format", "--output", "-o")


def canonical_argv(argv):
    """The invocation minus --seed/--format/--output, recorded separately in the config."""
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in _DROPPED:
            skip = True
            continue
        if tok.startswith(("--seed=", "--format=", "--output=")) or (tok.startswith("-o") and tok != "-o"
                                                          and not tok.startswith("--")):
            continue
        out.append(tok)
    return out


def replay_argv(config):
    """argv that regenerates the report described by ``config``."""
    return list(config["argv"]) + ["--seed", str(config["seed"]),
                                    "--format", config["format"]]


def resolve_seed(args):
    env = os.environ.get("TERRACINI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TERRACINI_SEED={env!r} is not an integer") from None
    if args.seed is not None:
        return args.seed
    return secrets.randbits(64)


def run_config(args, seed):
    strategy = RankStrategy.multi_prime(seed=seed) if args.fast else RankStrategy()
    cfg = {"command": args.command, "argv": getattr(args, "argv", [])}
    if getattr(args, "recipe", None):
        cfg["recipe"] = args.recipe
    if getattr(args, "target", None):
        cfg["target"] = args.target
    cfg.update(field=args.field.to_json() if args.field else None,
               strategy=strategy.to_dict(), seed=seed, format=args.format)
    return cfg, strategy


def emit_report(result, config, header=None, rows=None):
    """The document for one run: JSON (fixed key order) or CSV."""
    if config["format"] == "csv":
        return to_csv(rows, header)
    doc = {"schema": SCHEMA, "config": config, "result": _strip_schema(result)}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _strip_schema(obj):
    if isinstance(obj, dict):
        return {k: _strip_schema(v) for k, v in obj.items() if k != "schema"}
    if isinstance(obj, list):
        return [_strip_schema(v) for v in obj]
    return obj


def _example_row(ex):
    return {"construction": ex.construction,
            "parameters": json.dumps(ex.parameters, separators=(",", ":")),
            "seed": ex.seed, "curve_rank": ex.curve_rank,
            "curve_conditions": ex.curve_conditions,
            "curve_system_dim": ex.curve_system_dim,
            "ambient_rank": "" if ex.ambient_rank is None else ex.ambient_rank,
            "ambient_conditions": "" if ex.ambient_conditions is None else ex.ambient_conditions,
            "member": ex.verdict.member, "certified": ex.certified}


def _parse_xy(text, F):
    try:
        x, y = text.split(",")
    except ValueError:
        raise UsageError(f"bad point {text!r}; use x,y") from None
    return F(x), F(y)


def _cubic(args, default_field):
    F = args.field or default_field
    C = WeierstrassCurve(F(args.a), F(args.b), F)
    base = None
    if args.base:
        base = C.point(*_parse_xy(args.base, F))
    elif not isinstance(F, PrimeField):
        raise UsageError("elliptic computations over Q need --base x,y")
    return C, base


def _run(args, seed):
    config, strategy = run_config(args, seed)
    cmd = args.command

    if cmd == "membership":
        if args.points == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.points) as fh:
                doc = json.load(fh)
        S = PointSet.from_json(doc)
        if S.n != args.n:
            raise UsageError(f"--n {args.n} disagrees with the file's n = {S.n}")
        if args.field is not None and args.field != S.field:
            raise UsageError("--field disagrees with the field of the point file")
        v = membership(S, args.d, strategy)
        result = {"report": "membership", "input": S.to_json(), "d": args.d,
                  "verdict": v.to_dict()}
        row = {k: v.to_dict()[k] for k in VERDICT_HEADER}
        return emit_report(result, config, VERDICT_HEADER, [row])

    if cmd == "construct":
        if args.recipe == "rational":
            if args.curve == "line":
                curve = line_curve(args.n)
            elif args.curve == "rnc":
                curve = rational_normal_curve(args.n)
            else:
                with open(args.curve) as fh:
                    curve = curve_from_json(json.load(fh))
            ex = cons.construct_on_rational_curve(args.n, args.m, curve, args.k, seed, strategy)
            result = ex.to_dict()
            result["surjection_check"] = cons.surjection_check(ex)
        else:
            C, base = _cubic(args, GF(cons.DEFAULT_ELLIPTIC_PRIME))
            ex = cons.construct_elliptic_even(args.dprime, C, seed=seed, base=base)
            result = ex.to_dict()
        return emit_report(result, config, EXAMPLE_HEADER, [_example_row(ex)])

    if cmd == "probe":
        reports = []
        if args.target == "rnc":
            for k in args.k:
                reports.append(cons.probe_emptiness("rnc", args.dprime, k, args.trials,
                                                    seed, strategy=strategy))
        else:
            C, base = _cubic(args, GF(cons.DEFAULT_ELLIPTIC_PRIME))
            for k in args.k:
                reports.append(cons.probe_emptiness("elliptic-odd", args.dprime, k,
                                                    args.trials, seed, C, base, strategy))
        return _probe_doc(reports, config)

    if cmd == "ah":
        F = args.field or QQ
        reports = [ah_probe(args.n, d, k, args.trials, seed, F, strategy)
                   for d in args.d for k in args.k]
        return _probe_doc(reports, config)

    if cmd == "scan":
        rows = cons.scan_rows(args.n, args.m, args.curve, seed, strategy)
        result = {"report": "scan", "n": args.n, "curve": args.curve, "rows": rows}
        return emit_report(result, config, cons.SCAN_HEADER, rows)

    if cmd == "thresholds":
        reps = [cons.thresholds(args.n, m, args.e) for m in args.m]
        result = {"report": "thresholds", "items": [r.to_dict() for r in reps]}
        return emit_report(result, config, cons.ThresholdReport.csv_header,
                           [r.csv_row() for r in reps])
    raise UsageError(f"unknown command {cmd!r}")


def _probe_doc(reports, config):
    result = {"report": "probes", "items": [r.to_dict() for r in reports]}
    return emit_report(result, config, ProbeReport.csv_header,
                       [r.csv_row() for r in reports])


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w") as fh:
            fh.write(text)


def run_command(argv=None):
    """Run one CLI invocation and return its exit code."""
    if argv is None:
        argv = sys.argv[1:]
    argv = [str(a) for a in argv]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "replay":
            return _replay(args)
        args.argv = canonical_argv(argv)
        if args.format is None:
            args.format = "csv" if args.command == "scan" else "json"
        seed = resolve_seed(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        text = _run(args, seed)
    except RefusalError as exc:
        config, _ = run_config(args, seed)
        detail = exc.detail.to_dict() if hasattr(exc.detail, "to_dict") else exc.detail
        result = {"report": "refusal", "message": str(exc), "detail": detail}
        if args.format == "csv":
            text = to_csv([{"refusal": str(exc)}], ("refusal",))
        else:
            text = emit_report(result, config)
        try:
            _write(text, args.output)
        except OSError as oexc:
            print(f"terracini: cannot write output: {oexc}", file=sys.stderr)
            return 2
        print(f"terracini: refused: {exc}", file=sys.stderr)
        return 1
    except (UsageError, TerraciniError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"terracini: error: {exc}", file=sys.stderr)
        return 2
    try:
        _write(text, args.output)
    except OSError as exc:
        print(f"terracini: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def _replay(args):
    try:
        with open(args.report) as fh:
            config = json.load(fh)["config"]
        argv = replay_argv(config)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"terracini: cannot replay {args.report}: {exc}", file=sys.stderr)
        return 2
    saved = os.environ.pop("TERRACINI_SEED", None)
    try:
        if args.output:
            argv += ["--output", args.output]
        return run_command(argv)
    finally:
        if saved is not None:
            os.environ["TERRACINI_SEED"] = saved


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
