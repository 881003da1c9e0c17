"""Command-line interface.

Subcommands: eval (g, f, F at points), decompose (two-point digit split of a
value), preimage (constructive critical point over a value), verify (the
certified check suite), sample (CSV table of g/f along [0, M]), info
(construction landmarks).  Exit codes: 0 success, 1 verification failure,
2 usage or constraint errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .construction import (
    BoundaryAmbiguityError,
    ConstraintError,
    InFatGap,
    ModeError,
    Params,
    RangeError,
    critical_preimage,
    f_eval,
    g_eval,
    g_sup_bound,
    gap_interval,
    locate,
    params_new,
)
from .numerics import (
    Enclosure,
    fraction_to_decimal,
    scalar_to_fraction_bounds,
)
from .ternary import GapAddress, TernaryExpansion, steinhaus_decompose
from .verify import SUITES, VerificationReport, VerifyConfig, run_all

__all__ = ["CliConfig", "build_parser", "main", "entry"]


@dataclass
class CliConfig:
    alpha: Fraction
    mode: Optional[str]
    precision: int
    depth: int
    seed: int
    output: str


class UsageError(ValueError):
    pass


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r} ({exc})") from None


def _places(params: Params) -> int:
    # decimal digits carried by the working precision
    return max(6, params.precision * 301 // 1000)


def _enc_bounds(enc: Enclosure, places: int) -> tuple[str, str]:
    lo = scalar_to_fraction_bounds(enc.lo, places * 4)[0]
    hi = scalar_to_fraction_bounds(enc.hi, places * 4)[1]
    return (
        fraction_to_decimal(lo, places, "floor"),
        fraction_to_decimal(hi, places, "ceil"),
    )


def _enc_json(enc: Enclosure, places: int) -> dict:
    lo, hi = _enc_bounds(enc, places)
    out = {"lo": lo, "hi": hi}
    if enc.is_point:
        out["point"] = True
        if hasattr(enc.lo, "is_rational") and enc.lo.is_rational:
            out["value"] = str(enc.lo.as_fraction())
    return out


def _expansion_json(e: TernaryExpansion) -> dict:
    return {
        "preperiod": "".join(map(str, e.preperiod)),
        "period": "".join(map(str, e.period)),
        "display": str(e),
        "value": str(e.value()),
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", default="1/2", metavar="FRAC",
                        help="Hölder exponent (default 1/2)")
    common.add_argument("--mode", choices=("exact", "float"), default=None,
                        help="scalar regime (default: exact iff alpha = 1/2)")
    common.add_argument("--precision", type=int, default=256, metavar="BITS",
                        help="float-mode precision in bits (default 256)")
    common.add_argument("--depth", type=int, default=30, metavar="D",
                        help="descent depth for evaluation (default 30)")
    common.add_argument("--seed", type=int, default=42,
                        help="sampling seed for verify (default 42)")
    common.add_argument("--output", choices=("json", "csv", "text"),
                        default="text", help="output format (default text)")

    parser = argparse.ArgumentParser(
        prog="cantorval",
        description="Certified evaluation and verification of a Cantor-type "
        "construction whose two-variable sum surface attains every value in "
        "[0, 2] at a critical point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="evaluate g, f (and F, grad F) at points")
    p_eval.add_argument("--x", required=True, metavar="FRAC")
    p_eval.add_argument("--y", default=None, metavar="FRAC")

    p_dec = sub.add_parser("decompose", parents=[common],
                           help="split u in [0, 2] into two Cantor points")
    p_dec.add_argument("--u", required=True, metavar="FRAC")

    p_pre = sub.add_parser("preimage", parents=[common],
                           help="constructive critical point over u")
    p_pre.add_argument("--u", required=True, metavar="FRAC")

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run the certified verification suite")
    p_ver.add_argument("--suite", default="all",
                       help="'all' or comma-separated check names "
                       f"({', '.join(SUITES)})")
    p_ver.add_argument("--samples", type=int, default=10000)
    p_ver.add_argument("--max-level", type=int, default=8, dest="max_level")
    p_ver.add_argument("--grid", type=int, default=1000)

    p_sam = sub.add_parser("sample", parents=[common],
                           help="tabulate g and f along [0, M] as CSV")
    p_sam.add_argument("--count", type=int, default=100, metavar="N",
                       help="number of steps (N+1 rows; default 100)")
    p_sam.add_argument("--what", choices=("g", "f", "both"), default="both")

    sub.add_parser("info", parents=[common],
                   help="print the construction's landmark quantities")
    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        alpha=_parse_fraction(args.alpha),
        mode=args.mode,
        precision=args.precision,
        depth=args.depth,
        seed=args.seed,
        output=args.output,
    )


def _params(cfg: CliConfig) -> Params:
    return params_new(cfg.alpha, cfg.mode, cfg.precision)


def _locate_json(params: Params, result, places: int) -> dict:
    if isinstance(result, InFatGap):
        lo, hi = _enc_bounds(Enclosure(result.gap.lo, result.gap.hi), places)
        return {
            "kind": "gap",
            "level": result.gap.address.level,
            "index": result.gap.address.index,
            "gapLo": lo,
            "gapHi": hi,
        }
    lo, hi = _enc_bounds(Enclosure(*result.interval), places)
    return {
        "kind": "survivorComponent",
        "depth": result.component.depth,
        "lo": lo,
        "hi": hi,
    }


def cmd_eval(cfg: CliConfig, x_text: str, y_text: Optional[str]) -> int:
    params = _params(cfg)
    places = _places(params)
    x = _parse_fraction(x_text)
    out: dict = {"x": str(x)}
    out["locate"] = _locate_json(params, locate(params, x, cfg.depth), places)
    gx = g_eval(params, x, cfg.depth)
    fx = f_eval(params, x, cfg.depth)
    out["g"] = _enc_json(gx, places)
    out["f"] = _enc_json(fx, places)
    if y_text is not None:
        y = _parse_fraction(y_text)
        gy = g_eval(params, y, cfg.depth)
        fy = f_eval(params, y, cfg.depth)
        out["y"] = str(y)
        out["gY"] = _enc_json(gy, places)
        out["fY"] = _enc_json(fy, places)
        out["F"] = _enc_json(fx.add(fy), places)
        out["gradF"] = [_enc_json(gx, places), _enc_json(gy, places)]
    if cfg.output == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    elif cfg.output == "csv":
        raise UsageError("eval has no CSV form; use sample")
    else:
        loc = out["locate"]
        if loc["kind"] == "gap":
            where = f"gap level={loc['level']} index={loc['index']}"
        else:
            where = f"survivor component at depth {loc['depth']}"
        print(f"x = {out['x']}  ({where})")
        print(f"g(x) in [{out['g']['lo']}, {out['g']['hi']}]")
        print(f"f(x) in [{out['f']['lo']}, {out['f']['hi']}]")
        if y_text is not None:
            print(f"y = {out['y']}")
            print(f"g(y) in [{out['gY']['lo']}, {out['gY']['hi']}]")
            print(f"f(y) in [{out['fY']['lo']}, {out['fY']['hi']}]")
            print(f"F(x,y) in [{out['F']['lo']}, {out['F']['hi']}]")
    return 0


def cmd_decompose(cfg: CliConfig, u_text: str) -> int:
    u = _parse_fraction(u_text)
    x, y = steinhaus_decompose(u)
    out = {
        "u": str(u),
        "x": _expansion_json(x),
        "y": _expansion_json(y),
        "sumChecks": str(x.value() + y.value()),
    }
    if cfg.output == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    elif cfg.output == "csv":
        raise UsageError("decompose has no CSV form")
    else:
        print(f"u = {u}")
        print(f"x = {x}  (value {x.value()})")
        print(f"y = {y}  (value {y.value()})")
        print(f"x + y = {x.value() + y.value()}")
    return 0


def cmd_preimage(cfg: CliConfig, u_text: str) -> int:
    params = _params(cfg)
    places = _places(params)
    u = _parse_fraction(u_text)
    cp = critical_preimage(params, u, cfg.depth)
    grad = g_sup_bound(params, cfg.depth)
    grad_hi = fraction_to_decimal(
        scalar_to_fraction_bounds(grad.hi, places * 4)[1], places, "ceil"
    )
    out = {
        "u": str(u),
        "depth": cfg.depth,
        "x": _enc_json(cp.x, places),
        "y": _enc_json(cp.y, places),
        "xDigits": _expansion_json(cp.x_digits),
        "yDigits": _expansion_json(cp.y_digits),
        "fSpan": {
            "lo": str(cp.x_descent.f_lo + cp.y_descent.f_lo),
            "hi": str(cp.x_descent.f_hi + cp.y_descent.f_hi),
        },
        "gradUpperBound": grad_hi,
    }
    if cfg.output == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    elif cfg.output == "csv":
        raise UsageError("preimage has no CSV form")
    else:
        print(f"u = {u}")
        print(f"x in [{out['x']['lo']}, {out['x']['hi']}]  digits {cp.x_digits}")
        print(f"y in [{out['y']['lo']}, {out['y']['hi']}]  digits {cp.y_digits}")
        print(f"F(x,y) = {u} exactly; f-span [{out['fSpan']['lo']}, "
              f"{out['fSpan']['hi']}]")
        print(f"|grad F| <= {grad_hi} on the enclosing components")
    return 0


def cmd_verify(cfg: CliConfig, suite: str, samples: int, max_level: int,
               grid: int) -> int:
    params = _params(cfg)
    vconfig = VerifyConfig(
        depth=cfg.depth,
        max_level=max_level,
        samples=samples,
        grid=grid,
        seed=cfg.seed,
    )
    if suite == "all":
        report = run_all(params, vconfig)
    else:
        names = [s.strip() for s in suite.split(",") if s.strip()]
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(
                f"unknown checks: {', '.join(unknown)}; "
                f"available: {', '.join(SUITES)}"
            )
        import time as _time

        start = _time.monotonic()
        checks = [SUITES[n](params, vconfig) for n in names]
        report = VerificationReport(
            params={
                "alpha": str(params.alpha),
                "mode": params.mode,
                "precision": params.precision,
                "tentCoefficient": str(params.tent_coefficient),
            },
            seed=cfg.seed,
            checks=checks,
            wall_time_ms=int((_time.monotonic() - start) * 1000),
        )
    if cfg.output == "json":
        print(report.to_json_str())
    elif cfg.output == "csv":
        raise UsageError("verify has no CSV form")
    else:
        for c in report.checks:
            status = "pass" if c.passed else "FAIL"
            print(f"{c.name:16s} {status}  samples={c.samples}  "
                  f"worst={c.worst}")
        print(f"overall: {'pass' if report.overall else 'FAIL'} "
              f"({report.wall_time_ms} ms)")
    return 0 if report.overall else 1


def cmd_sample(cfg: CliConfig, count: int, what: str) -> int:
    if count < 2:
        raise UsageError("sample needs --count >= 2")
    params = _params(cfg)
    places = _places(params)
    header = {"g": "x,g_lo,g_hi", "f": "x,f_lo,f_hi",
              "both": "x,g_lo,g_hi,f_lo,f_hi"}[what]
    rows = [header]
    for i in range(count + 1):
        x = params.M * Fraction(i, count)
        x_lo, x_hi = scalar_to_fraction_bounds(x, places * 4)
        cells = [fraction_to_decimal((x_lo + x_hi) / 2, places, "nearest")]
        if what in ("g", "both"):
            lo, hi = _enc_bounds(g_eval(params, x, cfg.depth), places)
            cells += [lo, hi]
        if what in ("f", "both"):
            lo, hi = _enc_bounds(f_eval(params, x, cfg.depth), places)
            cells += [lo, hi]
        rows.append(",".join(cells))
    if cfg.output == "json":
        keys = header.split(",")
        print(json.dumps(
            [dict(zip(keys, r.split(","))) for r in rows[1:]],
            indent=2, sort_keys=True,
        ))
    else:
        print("\n".join(rows))
    return 0


def cmd_info(cfg: CliConfig) -> int:
    params = _params(cfg)
    places = min(_places(params), 40)

    def dec(x, rounding="nearest") -> str:
        lo, hi = scalar_to_fraction_bounds(x, places * 4)
        mid = (lo + hi) / 2
        return fraction_to_decimal(mid, places, rounding)

    from .numerics import _contexts

    down, up = _contexts(params.precision)
    m_lo = down.div(down.sub(down.log(3), up.log(2)), up.log(2))
    margin_lo = Fraction(*m_lo.as_integer_ratio()) - params.alpha

    gap1 = gap_interval(params, GapAddress(1, 1))
    peak = params.gap_pow(1, params.alpha) * (params.tent_coefficient / 2)
    out = {
        "alpha": str(params.alpha),
        "mode": params.mode,
        "precision": params.precision,
        "tentCoefficient": str(params.tent_coefficient),
        "alphaMarginToSup": fraction_to_decimal(margin_lo, 10, "floor"),
        "s": dec(params.s),
        "M": dec(params.M),
        "ell1": dec(params.gap_length(1)),
        "L1": dec(params.component_length(1)),
        "gap1Lo": dec(gap1.lo),
        "gap1Hi": dec(gap1.hi),
        "tentPeak1": dec(peak),
        "fTotal": str(params.f_total),
    }
    if cfg.output == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    elif cfg.output == "csv":
        raise UsageError("info has no CSV form")
    else:
        for k, v in out.items():
            print(f"{k} = {v}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "eval":
            return cmd_eval(cfg, args.x, args.y)
        if args.command == "decompose":
            return cmd_decompose(cfg, args.u)
        if args.command == "preimage":
            return cmd_preimage(cfg, args.u)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, args.samples, args.max_level,
                              args.grid)
        if args.command == "sample":
            return cmd_sample(cfg, args.count, args.what)
        if args.command == "info":
            return cmd_info(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ConstraintError, ModeError, RangeError,
            BoundaryAmbiguityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
