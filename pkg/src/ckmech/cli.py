"""Command-line interface: ``ckmech verify | simulate | curvature``.

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
3 a simulation stopped at a singularity.
"""

import argparse
import json
import sys

import numpy as np

from . import observables as obs
from . import verify
from .dynamics import check_initial_point, integrate
from .errors import EVALUATION_ERRORS, SingularityApproach, StepFailure
from .geometry import riemann_fd, riemann_ricci
from .liealg import SPACES, CKParams
from .phasespace import sample_point

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SINGULAR = 0, 1, 2, 3
POTENTIALS = ("family", "sw", "gkc1", "gkc2", "gkc3", "kc")


class ConfigError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help="preset: " + ", ".join(SPACES) + " (verify also accepts 'all')")
    common.add_argument("--kappa1", type=float, help="explicit curvature (use with --kappa2)")
    common.add_argument("--kappa2", type=float, help="explicit signature parameter, nonzero")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--points", type=int, default=None, help="number of sampled points")
    common.add_argument("--out", help="output file (JSON report or trajectory CSV)")

    pot = argparse.ArgumentParser(add_help=False)
    pot.add_argument("--potential", default="sw",
                     help="family | sw | gkc1 | gkc2 | gkc3 | kc (verify also accepts 'all'); "
                          "the family uses F(r) = beta0 r^4")
    b = obs.DEFAULT_BETAS
    for i in range(4):
        pot.add_argument(f"--beta{i}", type=float, default=b[i])
    pot.add_argument("--k", type=float, default=obs.DEFAULT_K, help="Coulomb constant")

    p = argparse.ArgumentParser(prog="ckmech", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common, pot], help="run the involution/rank/identity suite")
    v.add_argument("--tol-bracket", type=float, default=1e-8)
    v.add_argument("--tol-rank", type=float, default=1e-9)

    s = sub.add_parser("simulate", parents=[common, pot], help="integrate one trajectory")
    s.add_argument("--t-end", type=float, default=10.0)
    s.add_argument("--init", help="r,theta,phi,pr,ptheta,pphi (default: sampler point 0 for --seed)")
    s.add_argument("--tol-drift", type=float, default=1e-6)

    sub.add_parser("curvature", parents=[common], help="sectional and scalar curvature")
    return p


def _spaces(args, allow_all):
    explicit = args.kappa1 is not None or args.kappa2 is not None
    if args.space and explicit:
        raise ConfigError("--space and --kappa1/--kappa2 are mutually exclusive")
    if explicit:
        if args.kappa1 is None or args.kappa2 is None:
            raise ConfigError("give both --kappa1 and --kappa2")
        try:
            return {f"k1={args.kappa1:g},k2={args.kappa2:g}": CKParams(args.kappa1, args.kappa2)}
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if not args.space:
        raise ConfigError("choose a space with --space or --kappa1/--kappa2")
    if args.space == "all" and allow_all:
        return dict(SPACES)
    if args.space not in SPACES:
        raise ConfigError(f"unknown space {args.space!r}")
    return {args.space: SPACES[args.space]}


def _potentials(args, allow_all):
    if args.potential == "all" and allow_all:
        kinds = POTENTIALS
    elif args.potential in POTENTIALS:
        kinds = (args.potential,)
    else:
        raise ConfigError(f"unknown potential {args.potential!r}")
    betas = (args.beta0, args.beta1, args.beta2, args.beta3)
    return {kind: verify.default_potential(kind, betas, args.k) for kind in kinds}


def _config_echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if k != "out"}


def _write_report(args, report):
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


def _points(args, default):
    n = default if args.points is None else args.points
    if n < 1:
        raise ConfigError("--points must be >= 1")
    return n


def cmd_verify(args):
    spaces = _spaces(args, allow_all=True)
    pots = _potentials(args, allow_all=True)
    points = _points(args, 200)
    cells, ok = [], True
    for sname, params in spaces.items():
        for i, (kind, pot) in enumerate(pots.items()):
            try:
                spec = verify.CheckSpec(params, pot, points=points, seed=args.seed,
                                        tol_bracket=args.tol_bracket, tol_rank=args.tol_rank)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            rep = verify.full_suite(spec, include_space_checks=(i == 0))
            ok &= rep.passed
            cells.append({"space": sname, "kappa1": params.kappa1, "kappa2": params.kappa2,
                          "potential": kind, **rep.to_dict()})
            print(f"{sname:>6} {kind:<6} {'PASS' if rep.passed else 'FAIL'}  "
                  f"({len(rep.records)} checks)")
            for r in rep.failures:
                print(f"         failed: {r.name}: {r.value:.3g} vs {r.threshold:.3g} "
                      f"({r.points_used} points, {r.skipped} skipped)")
    _write_report(args, {"schema_version": SCHEMA_VERSION, "command": "verify",
                         "config": _config_echo(args), "passed": ok, "cells": cells})
    return EXIT_OK if ok else EXIT_FAIL


def _initial_point(args):
    if args.init is None:
        return np.asarray(sample_point(args.seed, 0))
    try:
        values = [float(v) for v in args.init.split(",")]
    except ValueError:
        raise ConfigError("--init needs six comma-separated numbers") from None
    if len(values) != 6:
        raise ConfigError("--init needs six comma-separated numbers")
    return np.asarray(values)


def cmd_simulate(args):
    (sname, params), = _spaces(args, allow_all=False).items()
    (kind, pot), = _potentials(args, allow_all=False).items()
    if not args.t_end > 0.0:
        raise ConfigError("--t-end must be positive")
    z0 = _initial_point(args)
    ints = obs.integrals(pot, params)
    watch = list(ints.values())
    try:
        check_initial_point(ints["H"], z0, watch)
    except SingularityApproach as exc:
        raise ConfigError(str(exc)) from None
    try:
        traj = integrate(ints["H"], z0, args.t_end, watch)
        failure = None
    except StepFailure as exc:
        traj, failure = exc.trajectory, str(exc)
    out = args.out or "trajectory.csv"
    traj.to_csv(out)
    drifts = traj.drifts()
    ok = all(d <= args.tol_drift for d in drifts.values())
    print(f"{sname} {kind}: {len(traj.samples)} samples to t={traj.samples[-1].t:.6g} -> {out}")
    for name, d in drifts.items():
        print(f"  drift {name:<5} {d:.3e} {'ok' if d <= args.tol_drift else 'EXCEEDS'}")
    if failure or not traj.complete:
        print(f"stopped: {failure or traj.message}")
        return EXIT_SINGULAR
    return EXIT_OK if ok else EXIT_FAIL


def cmd_curvature(args):
    (sname, params), = _spaces(args, allow_all=False).items()
    points = _points(args, 5)
    rows, ok = [], True
    for i in range(points):
        q = tuple(sample_point(args.seed, i)[:3])
        try:
            exact, fd = riemann_ricci(q, params), riemann_fd(q, params)
        except EVALUATION_ERRORS as exc:
            print(f"  point {i}: skipped ({exc})")
            continue
        residual = max([abs(exact.scalar - fd.scalar)]
                       + [abs(exact.sectional[k] - fd.sectional[k]) for k in exact.sectional])
        ok &= residual <= 1e-6
        rows.append({"q": list(q), "scalar": exact.scalar,
                     "sectional": {f"{a},{b}": v for (a, b), v in exact.sectional.items()},
                     "fd_residual": residual})
        sec = " ".join(f"K({a},{b})={v:+.12g}" for (a, b), v in exact.sectional.items())
        print(f"  q=({q[0]:.4f}, {q[1]:.4f}, {q[2]:.4f})  {sec}  K={exact.scalar:+.12g}  "
              f"FD residual {residual:.2e}")
    print(f"{sname}: scalar curvature 6*kappa1 = {6 * params.kappa1:g}")
    _write_report(args, {"schema_version": SCHEMA_VERSION, "command": "curvature",
                         "config": _config_echo(args), "passed": ok and bool(rows),
                         "kappa1": params.kappa1, "kappa2": params.kappa2, "points": rows})
    return EXIT_OK if ok and rows else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "simulate": cmd_simulate, "curvature": cmd_curvature}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
