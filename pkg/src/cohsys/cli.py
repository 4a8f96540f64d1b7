"""Command-line front end: classification queries, tables, verification runs.

Exit codes: 0 success / agreement, 1 verification disagreement, 2 usage or
parse errors.  All rational values are printed as exact fraction strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .classification import AlphaInterval, Status, Verdict, classify, cross_check
from .delta import delta_bruteforce, delta_closure, delta_formula, sample_delta_input
from .numerology import decompose
from .stability import (
    SystemInstance,
    critical_alphas,
    is_alpha_stable,
    sample_generating_instance,
    sample_instance,
    stability_interval,
    mix_seed,
)

TABLE_HEADER = ["n", "d", "k", "beta", "a", "t", "l", "m", "lower", "upper", "status"]


def _parse_range(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"bad range {text!r}")
        return tuple(range(lo_i, hi_i + 1))
    return (int(text),)


def _parse_fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())


@dataclass
class VerifyCampaignConfig:
    """One verification run: classify each cell, then test sampled instances."""

    n_values: tuple[int, ...]
    d_values: tuple[int, ...]
    k_values: tuple[int, ...]
    q: int = 101
    trials: int = 20
    seed: int = 0
    alpha_rule: str = "interval-midpoint"  # interval-midpoint | cell-midpoints | explicit
    alphas: tuple[Fraction, ...] = ()
    min_stable_frac: Fraction = Fraction(4, 5)
    empty_samples: int = 10
    force_large: bool = False
    require_generation: bool = False

    def to_json_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "d_values": list(self.d_values),
            "k_values": list(self.k_values),
            "q": self.q,
            "trials": self.trials,
            "seed": self.seed,
            "alpha_rule": self.alpha_rule,
            "alphas": [str(a) for a in self.alphas],
            "min_stable_frac": str(self.min_stable_frac),
            "empty_samples": self.empty_samples,
            "force_large": self.force_large,
            "require_generation": self.require_generation,
        }


def _expectation(verdict: Verdict, alpha: Fraction) -> str:
    """'zero', 'stable', or 'none' for a sampled weight."""
    if verdict.status is Status.EMPTY or not verdict.necessary_region.contains(alpha):
        return "zero"
    if verdict.stable_interval.contains(alpha) and verdict.status in (
        Status.EXACT,
        Status.PARTIALLY_KNOWN,
    ):
        return "stable"
    return "none"


def _plan_samples(verdict: Verdict, cfg: VerifyCampaignConfig) -> list[tuple[Fraction, str]]:
    if cfg.alpha_rule == "explicit":
        return [(a, "explicit") for a in cfg.alphas]
    if cfg.alpha_rule != "interval-midpoint":
        return []
    samples: list[tuple[Fraction, str]] = []
    if verdict.status is Status.EXACT:
        iv = verdict.stable_interval
        samples.append((iv.midpoint(), "midpoint"))
        below = iv.lower - Fraction(1, 2)
        if below > 0:
            samples.append((below, "below"))
        if iv.upper is not None:
            samples.append((iv.upper + Fraction(1, 2), "above"))
        return samples
    if verdict.status is Status.EMPTY:
        region = verdict.necessary_region
        kind = "inside-necessary"
        if region.empty:
            # the slope bounds alone may still cut out a region even when the
            # dimension count already rules the cell out; sample inside it
            region = _bounds_only_region(verdict.n, verdict.d, verdict.k)
            kind = "inside-bounds"
        m = cfg.empty_samples
        if not region.empty:
            lo = region.lower if region.lower is not None else Fraction(0)
            if region.upper is not None:
                width = region.upper - lo
                return [(lo + width * i / (m + 1), kind) for i in range(1, m + 1)]
            return [(lo + Fraction(i, 2), kind) for i in range(1, m + 1)]
        t = decompose(verdict.n, verdict.d, verdict.k).t
        return [(Fraction(t) + Fraction(1, 2), "anywhere"), (Fraction(t) + Fraction(3, 2), "anywhere")]
    return []


def _bounds_only_region(n: int, d: int, k: int) -> AlphaInterval:
    """The region cut out by the slope bounds alone, ignoring other gates."""
    num = decompose(n, d, k)
    lower = max(Fraction(0), Fraction(num.t, k))
    if k < n:
        if num.l is None or num.l <= 0:
            return AlphaInterval.EMPTY
        upper = Fraction(d, n - k) - Fraction(num.m * n, k * (n - k))
        return AlphaInterval.open_interval(lower, upper)
    if d <= 0:
        return AlphaInterval.EMPTY
    return AlphaInterval.open_interval(lower, None)


def _nudge_alpha(alpha: Fraction, crits: list[Fraction], verdict: Verdict) -> Fraction:
    """Move a sample off the instance's critical weights, same expectation class."""
    if alpha not in crits:
        return alpha
    want = _expectation(verdict, alpha)
    step = Fraction(1, 9973)
    for direction in (1, -1):
        cand = alpha
        for _ in range(len(crits) + 2):
            cand += direction * step
            if cand >= 0 and cand not in crits and _expectation(verdict, cand) == want:
                return cand
    raise RuntimeError("could not move the sample weight off the critical set")


def _draw_instances(cfg: VerifyCampaignConfig, n: int, d: int, k: int) -> list[SystemInstance]:
    out = []
    for tr in range(cfg.trials):
        seed = mix_seed(cfg.seed, n, d, k, tr)
        if cfg.require_generation:
            out.append(sample_generating_instance(n, d, k, cfg.q, seed))
        else:
            out.append(sample_instance(n, d, k, cfg.q, seed))
    return out


def run_verify_campaign(cfg: VerifyCampaignConfig) -> dict:
    cells = []
    all_agree = True
    for n in cfg.n_values:
        for d in cfg.d_values:
            for k in cfg.k_values:
                cell = {"n": n, "d": d, "k": k}
                try:
                    verdict = classify(n, d, k)
                except ValueError as exc:
                    cell.update(skipped=f"classify: {exc}")
                    cells.append(cell)
                    continue
                cell["status"] = verdict.status.value
                try:
                    instances = _draw_instances(cfg, n, d, k)
                except (ValueError, RuntimeError) as exc:
                    cell.update(skipped=f"sampling: {exc}")
                    cells.append(cell)
                    continue
                if cfg.alpha_rule == "cell-midpoints":
                    agree = _containment_cell(cfg, verdict, instances, cell)
                else:
                    agree = _sampled_cell(cfg, verdict, instances, cell)
                cell["agree"] = agree
                all_agree = all_agree and agree
                cells.append(cell)
    return {"config": cfg.to_json_dict(), "cells": cells, "all_agree": all_agree}


def _sampled_cell(cfg, verdict, instances, cell) -> bool:
    plan = _plan_samples(verdict, cfg)
    samples_out = []
    agree = True
    for alpha, kind in plan:
        expect = _expectation(verdict, alpha)
        stable_count = 0
        for inst in instances:
            crits = critical_alphas(inst, cfg.force_large)
            a2 = _nudge_alpha(alpha, crits, verdict)
            if is_alpha_stable(inst, a2, cfg.force_large).stable:
                stable_count += 1
        frac = Fraction(stable_count, len(instances))
        ok = True
        if expect == "zero":
            ok = stable_count == 0
        elif expect == "stable":
            ok = frac >= cfg.min_stable_frac
        samples_out.append(
            {
                "alpha": str(alpha),
                "kind": kind,
                "expect": expect,
                "stable_count": stable_count,
                "trials": len(instances),
                "agree": ok,
            }
        )
        agree = agree and ok
    cell["samples"] = samples_out
    return agree


def _containment_cell(cfg, verdict, instances, cell) -> bool:
    """Every instance's stable range must sit inside what the verdict allows."""
    violations = 0
    intervals = []
    for inst in instances:
        iv = stability_interval(inst, cfg.force_large)
        intervals.append(str(iv))
        if verdict.status is Status.EMPTY:
            ok = iv.empty
        elif verdict.status is Status.EXACT:
            ok = iv.issubset(verdict.stable_interval)
        else:
            ok = iv.issubset(verdict.necessary_region)
        if not ok:
            violations += 1
    cell["intervals"] = intervals
    cell["violations"] = violations
    return violations == 0


# -- subcommands --------------------------------------------------------------


def _cmd_classify(args: argparse.Namespace) -> int:
    verdict = classify(args.n, args.d, args.k)
    print(json.dumps(verdict.to_json_dict(), indent=2))
    return 0


def _interval_cells(iv: AlphaInterval) -> tuple[str, str]:
    if iv.empty:
        return "", ""
    lo = "" if iv.lower is None else str(iv.lower)
    hi = "inf" if iv.upper is None else str(iv.upper)
    return lo, hi


def _table_rows(n_values, d_values, k_values) -> list[dict]:
    rows = []
    for n in n_values:
        for d in d_values:
            for k in k_values:
                num = decompose(n, d, k)
                verdict = classify(n, d, k)
                lo, hi = _interval_cells(verdict.stable_interval)
                rows.append(
                    {
                        "n": n,
                        "d": d,
                        "k": k,
                        "beta": num.beta,
                        "a": num.a,
                        "t": num.t,
                        "l": num.l,
                        "m": num.m,
                        "lower": lo,
                        "upper": hi,
                        "status": verdict.status.value,
                    }
                )
    return rows


def _cmd_table(args: argparse.Namespace) -> int:
    rows = _table_rows(_parse_range(args.n), _parse_range(args.d), _parse_range(args.k))
    if args.format == "json":
        print(json.dumps(rows, indent=2))
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(TABLE_HEADER)
    for row in rows:
        writer.writerow(
            [
                row["n"], row["d"], row["k"], row["beta"], row["a"], row["t"],
                "" if row["l"] is None else row["l"],
                "" if row["m"] is None else row["m"],
                row["lower"], row["upper"], row["status"],
            ]
        )
    sys.stdout.write(buf.getvalue())
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = VerifyCampaignConfig(
        n_values=_parse_range(args.n),
        d_values=_parse_range(args.d),
        k_values=_parse_range(args.k),
        q=args.q,
        trials=args.trials,
        seed=args.seed,
        alpha_rule=args.alpha_rule,
        alphas=_parse_fractions(args.alphas) if args.alphas else (),
        min_stable_frac=Fraction(args.min_stable_frac),
        empty_samples=args.empty_samples,
        force_large=args.force_large,
        require_generation=args.require_generation,
    )
    if cfg.alpha_rule == "explicit" and not cfg.alphas:
        raise ValueError("--alpha-rule explicit needs --alphas")
    report = run_verify_campaign(cfg)
    print(json.dumps(report, indent=2))
    return 0 if report["all_agree"] else 1


def _cmd_delta_check(args: argparse.Namespace) -> int:
    formula = delta_formula(args.a, args.t)
    closure_vals = []
    rational_vals = []
    for i in range(args.trials):
        inp = sample_delta_input(args.a, args.t, args.q, mix_seed(args.seed, i))
        closure_vals.append(delta_closure(inp))
        rational_vals.append(delta_bruteforce(inp))
    matches = sum(1 for v in closure_vals if v == formula)
    report = {
        "a": args.a,
        "t": args.t,
        "q": args.q,
        "trials": args.trials,
        "formula": formula,
        "observed_max": max(closure_vals),
        "observed_min": min(closure_vals),
        "match_fraction": matches / args.trials,
        "rational_scan_max": max(rational_vals),
    }
    print(json.dumps(report, indent=2))
    ok = report["observed_max"] == formula and all(v <= formula for v in closure_vals)
    return 0 if ok else 1


def _cmd_check_instance(args: argparse.Namespace) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    inst = SystemInstance.from_json_dict(data)
    report = is_alpha_stable(inst, Fraction(args.alpha), args.force_large)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0


def _cmd_cross_check(args: argparse.Namespace) -> int:
    report = cross_check(args.n, args.d)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0 if report.all_agree else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohsys",
        description="Exact weight-stability of section pairs on the projective line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classification verdict for one triple")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table", help="bulk classification table")
    p.add_argument("--n", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="randomized agreement campaign")
    p.add_argument("--n", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--q", type=int, default=101)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--alpha-rule",
        choices=["interval-midpoint", "cell-midpoints", "explicit"],
        default="interval-midpoint",
    )
    p.add_argument("--alphas", default="", help="comma-separated exact fractions")
    p.add_argument("--min-stable-frac", default="4/5")
    p.add_argument("--empty-samples", type=int, default=10)
    p.add_argument("--force-large", action="store_true")
    p.add_argument("--require-generation", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("delta-check", help="pencil-rank formula vs oracle")
    p.add_argument("a", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--q", type=int, default=101)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_delta_check)

    p = sub.add_parser("check-instance", help="stability report for an instance file")
    p.add_argument("path")
    p.add_argument("alpha")
    p.add_argument("--force-large", action="store_true")
    p.set_defaults(func=_cmd_check_instance)

    p = sub.add_parser("cross-check", help="agreement of overlapping case rules")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=_cmd_cross_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
