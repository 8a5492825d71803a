"""Command-line driver: ``rharmonic {verify,eval,grid,seeds}``."""

from __future__ import annotations

import argparse
import json
import sys

from .families import FamilySpec, get_seed, seed_catalog
from .jets import DomainError
from .verify import SPACES, SamplePlan, Tolerances, coordinate_names, evaluate_point, grid_export, verify


def parse_complex(text):
    """Parse literals such as ``1``, ``-2.5``, ``3i``, ``1+2i``, ``1e-3-i``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise argparse.ArgumentTypeError("empty complex literal")
    s = s.replace("i", "j")
    if s.endswith("j"):
        head = s[:-1]
        # bare sign or trailing operator before j means unit imaginary part
        if head == "" or head[-1] in "+-":
            s = head + "1j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex literal {text!r}") from None


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment.  Keys use flag names
    without dashes (``rng-seed`` or ``rng_seed``)."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _family_args(p):
    p.add_argument("--n", type=int, default=4, help="dimension of the model space")
    p.add_argument("--r", type=int, default=2, help="harmonicity order")
    p.add_argument("--a", type=parse_complex, default=complex(1), help="coefficient a_r, e.g. 1+2i")
    p.add_argument("--b", type=parse_complex, default=complex(1), help="coefficient b_r")
    p.add_argument("--seed-id", default="coord:1", help="harmonic seed identifier (see 'seeds')")
    p.add_argument("--space", choices=SPACES, default="upper_half")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rharmonic",
        description="Construct and verify proper r-harmonic functions on hyperbolic spaces and spheres.")
    parser.add_argument("--config", default=None, help="file of 'key = value' defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="symbolic and sampled numerical verification")
    _family_args(p)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="residual tolerance relative to S")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("eval", help="field value and iterated tensions at one point")
    _family_args(p)
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("grid", help="CSV of values on a tensor grid")
    _family_args(p)
    p.add_argument("--grid", action="append", default=None,
                   help="axis as start:stop:num; repeat per coordinate or give once for all")
    p.add_argument("--format", choices=("csv",), default="csv")

    p = sub.add_parser("seeds", help="list harmonic seeds for dimension n")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            dests = {a.dest: a for a in sp._actions}
            defaults = {}
            for key, raw in values.items():
                if key in dests:
                    a = dests[key]
                    value = a.type(raw) if a.type else raw
                    defaults[key] = [value] if isinstance(a, argparse._AppendAction) else value
            sp.set_defaults(**defaults)


def _spec(args):
    seed = get_seed(args.n, args.seed_id)
    return FamilySpec(args.n, args.r, args.a, args.b, seed)


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cx(z):
    return [complex(z).real, complex(z).imag]


def _cmd_verify(args):
    spec = _spec(args)
    plan = SamplePlan(args.space, count=args.points, rng_seed=args.rng_seed)
    report = verify(spec, args.space, plan, Tolerances(residual=args.tol))
    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    else:
        text = report.to_text() + "\n"
    _emit(text, args.out)
    return 0 if report.passed else 1


def _cmd_eval(args):
    spec = _spec(args)
    point = tuple(float(v) for v in args.point.split(","))
    res = evaluate_point(spec, args.space, point)
    if args.format == "json":
        payload = {
            "spec": spec.to_dict(),
            "space": args.space,
            "point": list(point),
            "values": [_cx(v) for v in res.values],
            "scale": res.scale,
            "rel_residual": res.residual,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        names = coordinate_names(args.space, spec.n)
        lines = ["  ".join(f"{k}={v:.17g}" for k, v in zip(names, point))]
        lines.append(f"f        = {res.values[0]:.17g}")
        for k, v in enumerate(res.values[1:], 1):
            lines.append(f"tau^{k:<4d} = {v:.17g}")
        lines.append(f"scale S  = {res.scale:.6e}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _parse_axis(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid axis must be start:stop:num, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _cmd_grid(args):
    spec = _spec(args)
    dim = len(coordinate_names(args.space, spec.n))
    axes = [_parse_axis(g) for g in (args.grid or [])]
    if len(axes) == 1:
        axes = axes * dim
    if len(axes) != dim:
        raise ValueError(f"need 1 or {dim} --grid axes for {args.space}, got {len(axes)}")
    text, bad = grid_export(spec, args.space, axes)
    _emit(text, args.out)
    if bad:
        print(f"{len(bad)} inadmissible grid cells left empty", file=sys.stderr)
    return 0


def _cmd_seeds(args):
    seeds = seed_catalog(args.n)
    if args.format == "json":
        text = json.dumps([{"id": s.id, "poly": str(s)} for s in seeds], indent=2) + "\n"
    else:
        text = "".join(f"{s.id:12s} {s}\n" for s in seeds)
    _emit(text, args.out)
    return 0


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    args = parser.parse_args(argv)
    handler = {"verify": _cmd_verify, "eval": _cmd_eval, "grid": _cmd_grid, "seeds": _cmd_seeds}
    try:
        return handler[args.command](args)
    except (ValueError, KeyError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
