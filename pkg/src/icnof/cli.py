"""Command-line interface.

Subcommands: classify, region achievable|converse, gap ledger|numeric,
verify theorem3, sweep, fm-check.  Exit codes: 0 on success, 1 on
verification failure, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .achievable import CodingScheme, GridSpec, achievable_union
from .channel import (
    ChannelParams,
    SymmetricSpec,
    classify,
    db_to_linear,
    from_symmetric,
    params_from_dict,
)
from .converse import converse_union
from .errors import (
    EquivalenceFailure,
    IcnofError,
    InputError,
    InterferenceTooWeak,
    VerificationFailure,
)
from .fm import equivalence_check, theta_from_scheme
from .gaps import (
    GENERATOR_ID,
    ledger_gap,
    numeric_gap,
    sample_channel,
    sweep_alpha_beta,
    verify_constant_gap,
)
from .geometry import Region, frontier


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _json_value(x):
    if isinstance(x, float) and not np.isfinite(x):
        return None
    return x


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dump_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=_json_value) + "\n"
    _write_text(path, text)


def _frontier_csv(region: Region, samples: int) -> str:
    lines = ["r1,r2"]
    for p in frontier(region, samples):
        lines.append(f"{_fmt(p.r1)},{_fmt(p.r2)}")
    return "\n".join(lines) + "\n"


def _bounds_json(region: Region):
    return [
        {
            "c_r1": _json_value(b.c_r1),
            "c_r2": _json_value(b.c_r2),
            "c_sum": _json_value(b.c_sum),
            "c_2r1_r2": _json_value(b.c_2r1_r2),
            "c_r1_2r2": _json_value(b.c_r1_2r2),
        }
        for b in region.bound_sets
    ]


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise InputError(f"{flag} expects LO:HI, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise InputError(f"{flag} expects numbers, got {text!r}") from exc
    if not lo < hi:
        raise InputError(f"{flag} needs LO < HI, got {text!r}")
    return lo, hi


def _parse_grid_range(text: str, flag: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"{flag} expects LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError as exc:
        raise InputError(f"{flag} expects numbers, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise InputError(f"{flag} needs LO <= HI and STEP > 0, got {text!r}")
    count = int(round((hi - lo) / step)) + 1
    return [lo + k * step for k in range(count)]


def _load_params(args) -> ChannelParams:
    has_file = args.params is not None
    has_sym = args.snr_db is not None or args.alpha is not None or args.beta is not None
    if has_file and has_sym:
        raise InputError("give either --params or the symmetric flags, not both")
    if has_file:
        try:
            with open(args.params) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read --params file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"--params is not valid JSON: {exc}") from exc
        return params_from_dict(obj)
    if args.snr_db is None or args.alpha is None or args.beta is None:
        raise InputError("need --params FILE or all of --snr-db, --alpha, --beta")
    try:
        return from_symmetric(SymmetricSpec(db_to_linear(args.snr_db), args.alpha, args.beta))
    except (InterferenceTooWeak, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _grids(args) -> GridSpec:
    return GridSpec(
        rho_steps=args.rho_steps,
        mu_steps=args.mu_steps,
        conv_rho_steps=args.conv_rho_steps,
        frontier_samples=args.frontier_samples,
        tol=args.tol,
    )


def _threads(args) -> int:
    if args.threads is not None:
        value = args.threads
    else:
        env = os.environ.get("ICNOF_THREADS")
        if env is not None:
            try:
                value = int(env)
            except ValueError as exc:
                raise InputError(f"ICNOF_THREADS must be an integer, got {env!r}") from exc
        else:
            value = os.cpu_count() or 1
    if value < 1:
        raise InputError("--threads must be >= 1")
    return value


def _add_params_flags(sub) -> None:
    sub.add_argument("--params", metavar="FILE", help="JSON parameter object (linear or *_db keys)")
    sub.add_argument("--snr-db", type=float, help="symmetric channel: forward SNR in dB")
    sub.add_argument("--alpha", type=float, help="symmetric channel: log INR / log SNR")
    sub.add_argument("--beta", type=float, help="symmetric channel: log feedback-SNR / log SNR")


def _add_grid_flags(sub) -> None:
    sub.add_argument("--rho-steps", type=int, default=33)
    sub.add_argument("--mu-steps", type=int, default=17)
    sub.add_argument("--conv-rho-steps", type=int, default=257)
    sub.add_argument("--frontier-samples", type=int, default=512)
    sub.add_argument("--tol", type=float, default=1e-6)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icnof",
        description=(
            "Inner/outer capacity-region bounds and gap analysis for the "
            "two-user Gaussian interference channel with noisy feedback"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="print the interference scenario pair")
    _add_params_flags(p_classify)

    p_region = sub.add_parser("region", help="export a rate region")
    region_sub = p_region.add_subparsers(dest="which", required=True)
    for which in ("achievable", "converse"):
        pr = region_sub.add_parser(which)
        _add_params_flags(pr)
        _add_grid_flags(pr)
        pr.add_argument("-o", "--output", metavar="PATH", help="frontier CSV (default stdout)")
        pr.add_argument("--bounds-json", metavar="PATH", help="also dump the bound sets as JSON")

    p_gap = sub.add_parser("gap", help="gap between the converse and achievable regions")
    gap_sub = p_gap.add_subparsers(dest="which", required=True)
    for which in ("ledger", "numeric"):
        pg = gap_sub.add_parser(which)
        _add_params_flags(pg)
        _add_grid_flags(pg)
        pg.add_argument("-o", "--output", metavar="PATH", help="JSON report (default stdout)")

    p_verify = sub.add_parser("verify", help="verification sweeps")
    verify_sub = p_verify.add_subparsers(dest="which", required=True)
    pv = verify_sub.add_parser("theorem3", help="constant-gap bound on random channels")
    pv.add_argument("--samples", type=int, default=200)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--snr-range", default="10:60", metavar="LO:HI", help="dB range")
    pv.add_argument("--inr-range", default=None, metavar="LO:HI", help="dB range (default: snr range)")
    pv.add_argument("--fb-range", default=None, metavar="LO:HI", help="dB range (default: snr range)")
    pv.add_argument("--slack", type=float, default=0.05)
    pv.add_argument("--threads", type=int, default=None)
    _add_grid_flags(pv)
    pv.add_argument("-o", "--output", metavar="PATH", help="JSON report (default stdout)")

    p_sweep = sub.add_parser("sweep", help="gap surface over the symmetric (alpha, beta) grid")
    p_sweep.add_argument("--snr-db", type=float, required=True)
    p_sweep.add_argument("--alpha", required=True, metavar="LO:HI:STEP")
    p_sweep.add_argument("--beta", required=True, metavar="LO:HI:STEP")
    p_sweep.add_argument("--threads", type=int, default=None)
    _add_grid_flags(p_sweep)
    p_sweep.add_argument("-o", "--output", required=True, metavar="PATH", help="surface CSV")

    p_fm = sub.add_parser("fm-check", help="projected region vs split-rate feasibility")
    p_fm.add_argument("--samples", type=int, default=100)
    p_fm.add_argument("--seed", type=int, default=0)
    p_fm.add_argument("--resolution", type=int, default=64)
    p_fm.add_argument("--rate-grid", type=int, default=64)
    p_fm.add_argument("--adversarial", type=int, default=0, help="extra stress vectors")
    p_fm.add_argument("-o", "--output", metavar="PATH", help="JSON report (default stdout)")

    return parser


def _cmd_classify(args) -> int:
    params = _load_params(args)
    print(str(classify(params)))
    return 0


def _cmd_region(args) -> int:
    params = _load_params(args)
    grids = _grids(args)
    if args.which == "achievable":
        region = achievable_union(params, grids)
    else:
        region = converse_union(params, grids.conv_rho_steps)
    csv_text = _frontier_csv(region, grids.frontier_samples)
    _write_text(args.output, csv_text)
    if args.bounds_json:
        _dump_json(_bounds_json(region), args.bounds_json)
    return 0


def _cmd_gap(args) -> int:
    params = _load_params(args)
    grids = _grids(args)
    if args.which == "ledger":
        led = ledger_gap(params, grids.conv_rho_steps)
        report = {
            "case": led.case,
            "scheme": {"rho": led.scheme.rho, "mu1": led.scheme.mu1, "mu2": led.scheme.mu2},
            "d_r1": led.d_r1,
            "d_r2": led.d_r2,
            "d_2r": led.d_2r,
            "d_3r1": led.d_3r1,
            "d_3r2": led.d_3r2,
            "delta": led.delta,
        }
    else:
        gap = numeric_gap(params, grids)
        report = {"xi": gap.xi, "witness": {"r1": gap.witness.r1, "r2": gap.witness.r2}}
    _dump_json(report, args.output)
    return 0


def _cmd_verify(args) -> int:
    grids = _grids(args)
    snr_range = _parse_range(args.snr_range, "--snr-range")
    inr_range = _parse_range(args.inr_range, "--inr-range") if args.inr_range else None
    fb_range = _parse_range(args.fb_range, "--fb-range") if args.fb_range else None
    try:
        report = verify_constant_gap(
            seed=args.seed,
            n=args.samples,
            grids=grids,
            snr_range_db=snr_range,
            inr_range_db=inr_range,
            fb_range_db=fb_range,
            slack=args.slack,
            threads=_threads(args),
        )
    except VerificationFailure as exc:
        _dump_json(exc.report, args.output)
        print(f"verification FAILED: {exc}", file=sys.stderr)
        return 1
    _dump_json(report, args.output)
    return 0


def _cmd_sweep(args) -> int:
    if args.snr_db <= 0.0:
        raise InputError("--snr-db must be > 0 dB so that snr > 1")
    alphas = _parse_grid_range(args.alpha, "--alpha")
    betas = _parse_grid_range(args.beta, "--beta")
    grids = _grids(args)
    rows = sweep_alpha_beta(db_to_linear(args.snr_db), alphas, betas, grids, _threads(args))
    lines = ["alpha,beta,xi_bits"]
    for alpha, beta, xi in rows:
        tail = _fmt(xi) if xi is not None else ""
        lines.append(f"{_fmt(alpha)},{_fmt(beta)},{tail}")
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_fm_check(args) -> int:
    if args.samples < 0 or args.adversarial < 0:
        raise InputError("--samples and --adversarial must be >= 0")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    thetas = []
    from .achievable import rho_max
    from .fm import adversarial_theta

    for _ in range(args.samples):
        params = sample_channel(rng)
        scheme = CodingScheme(
            rho=float(rng.uniform(0.0, rho_max(params))),
            mu1=float(rng.uniform()),
            mu2=float(rng.uniform()),
        )
        thetas.append(theta_from_scheme(params, scheme))
    for _ in range(args.adversarial):
        thetas.append(adversarial_theta(rng))

    checked = 0
    violations = []
    for k, theta in enumerate(thetas):
        try:
            rep = equivalence_check(theta, rate_grid=args.rate_grid, resolution=args.resolution)
        except EquivalenceFailure as exc:
            rep = exc.report
            violations.extend({**v, "theta_index": k} for v in rep["violations"])
        checked += rep["checked"]
    report = {
        "generator": GENERATOR_ID,
        "seed": args.seed,
        "theta_vectors": len(thetas),
        "checked": checked,
        "violations": violations,
    }
    _dump_json(report, args.output)
    if violations:
        print(f"fm-check FAILED: {len(violations)} violation(s)", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "classify": _cmd_classify,
        "region": _cmd_region,
        "gap": _cmd_gap,
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "fm-check": _cmd_fm_check,
    }
    try:
        return handlers[args.command](args)
    except (InputError, InterferenceTooWeak) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification FAILED: {exc}", file=sys.stderr)
        return 1
    except IcnofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
