"""Command-line front end.

Exit status reports execution only (0 ok, 1 runtime error, 2 usage error);
verdicts live in the report.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import criterion, observables, proofs, serialization, states
from .errors import BellCertError, InvalidArgument, StateFileError
from .seesaw import SeesawConfig, seesaw

DEMO_LAMBDA = (0.5, 0.6, 0.9)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--deterministic", action="store_true", help="omit wall-clock timings")

    state = argparse.ArgumentParser(add_help=False)
    state.add_argument("--state", required=True, help="StateFile JSON path")
    state.add_argument("--n", type=int, required=True, help="number of Bob settings")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--restarts", type=int, default=SeesawConfig.restarts)
    oracle.add_argument("--seed", type=int, default=SeesawConfig.seed)
    oracle.add_argument("--tol", type=float, default=SeesawConfig.tol)
    oracle.add_argument("--max-iters", type=int, default=SeesawConfig.max_iters)
    oracle.add_argument("--all-observables", action="store_true", help="drop the traceless restriction in the see-saw")

    p = argparse.ArgumentParser(prog="bellcert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("criterion", parents=[common, state], help="M_n value and verdict")
    c.add_argument("--frame", choices=("auto", "identity"), default="auto")
    k = sub.add_parser("construct", parents=[common, state], help="explicit observables and saturation checks")
    k.add_argument("--method", choices=("optimal", "n3"), default="optimal")
    sub.add_parser("seesaw", parents=[common, state, oracle], help="numerical optimum by alternating best responses")
    v = sub.add_parser("verify-proofs", parents=[common], help="rank and orthogonality table")
    v.add_argument("--n-max", type=int, default=12)
    sub.add_parser("demo", parents=[common, oracle], help="anchor numbers")
    return p


def _echo(args) -> dict:
    keep = ("state", "n", "restarts", "seed", "tol", "max_iters", "all_observables", "n_max", "frame", "method")
    out = {"name": args.command}
    for key in keep:
        if hasattr(args, key):
            out[key] = getattr(args, key)
    return out


def _oracle_config(args) -> SeesawConfig:
    if args.restarts < 1:
        raise UsageError("--restarts must be positive")
    return SeesawConfig(restarts=args.restarts, max_iters=args.max_iters, tol=args.tol, seed=args.seed, traceless=not args.all_observables)


def _load(args):
    rho = serialization.load_state(args.state)
    m = states.num_qubits(states.local_dim(rho))
    if args.n < 2 or args.n > 2 * m + 1:
        raise UsageError(f"--n {args.n} does not fit a state with {m} qubit(s) per side (need 2 <= n <= {2 * m + 1})")
    return rho


def _cmd_criterion(args, rep):
    rho = _load(args)
    rep["criterion"] = criterion.m_n(rho, args.n, frame=args.frame).to_dict()


def _cmd_construct(args, rep):
    rho = _load(args)
    if args.method == "n3":
        if args.n != 3 or rho.shape != (4, 4):
            raise UsageError("--method n3 needs a two-qubit state and --n 3")
        obs = observables.construct_n3(rho)
    else:
        obs, crit = observables.construct_optimal(rho, args.n)
        rep["criterion"] = crit.to_dict()
    rep["observables"] = serialization.observables_to_dict(obs)
    rep["bell_value"] = obs.value(rho)
    rep["proposition1"] = observables.verify_proposition1(obs, rho).to_dict()


def _cmd_seesaw(args, rep):
    rho = _load(args)
    res = seesaw(rho, args.n, _oracle_config(args))
    crit = criterion.m_n(rho, args.n)
    rep["oracle"] = res.to_dict()
    rep["criterion"] = crit.to_dict()
    rep["gap"] = res.value - crit.bell_lower_bound


def _cmd_verify(args, rep):
    if args.n_max < 2 or args.n_max > proofs.MAX_N:
        raise UsageError(f"--n-max must be in [2, {proofs.MAX_N}]")
    rep["proofs"] = [r.to_dict() for r in proofs.verify_proofs(args.n_max)]


def _werner_threshold(n: int, tol: float = 1e-12) -> float:
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if criterion.violates(states.werner(mid), n)[0]:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def _cmd_demo(args, rep):
    cfg = _oracle_config(args)
    werner = {str(n): {"criterion_threshold": _werner_threshold(n)} for n in (2, 3)}
    werner["2"]["expected"] = 1 / np.sqrt(2)
    werner["3"]["expected"] = np.sqrt(3) / 2
    lam = np.array(DEMO_LAMBDA)
    anchor = {"lambda": list(DEMO_LAMBDA), "closed_form": 8 * criterion.appendix_b_value(lam)}
    try:
        states.check_bell_diagonal(lam)
        anchor["valid_state"] = True
    except BellCertError as e:
        anchor["valid_state"] = False
        anchor["note"] = str(e)
    # flipping all signs keeps every |lambda_i| and yields a valid state
    flipped = -lam
    rho = states.m_copies(states.bell_diagonal(*flipped), 2)
    obs = observables.appendix_b(flipped, order="magnitude")
    res = seesaw(rho, 4, cfg)
    crit = criterion.m_n(rho, 4)
    valid = {
        "lambda": flipped.tolist(),
        "closed_form": 8 * criterion.appendix_b_value(flipped),
        "listed_observables_value": obs.value(rho),
        "criterion_bound": crit.bell_lower_bound,
        "seesaw": res.value,
    }
    rep["demo"] = {"werner_thresholds": werner, "appendix_b": anchor, "appendix_b_valid": valid}


COMMANDS = {
    "criterion": _cmd_criterion,
    "construct": _cmd_construct,
    "seesaw": _cmd_seesaw,
    "verify-proofs": _cmd_verify,
    "demo": _cmd_demo,
}


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _text(rep: dict) -> str:
    lines = [f"bellcert {rep['command']['name']}"]
    crit = rep.get("criterion")
    if crit:
        for key in ("n", "m", "m_n_value", "threshold", "margin", "verdict", "bell_lower_bound", "frame"):
            lines.append(f"  {key}: {_fmt(crit[key])}")
        lines.append(f"  alice: {' '.join(crit['best_alice_subset'])}")
        lines.append(f"  bob:   {' '.join(crit['best_bob_set'])}")
        lines += [f"  note: {n}" for n in crit.get("notes", [])]
    if "bell_value" in rep:
        lines.append(f"  bell_value: {_fmt(rep['bell_value'])}")
    if "proposition1" in rep:
        p = rep["proposition1"]
        for key in ("anticommutation", "weight_sum", "extension_rows", "traceless"):
            lines.append(f"  {key}: {'pass' if p[key]['pass'] else 'FAIL'}")
    if "oracle" in rep:
        o = rep["oracle"]
        lines.append(f"  seesaw: {_fmt(o['value'])} ({o['domain']}, {o['iterations']} iterations, converged={o['converged']})")
        lines.append(f"  gap over criterion bound: {_fmt(rep['gap'])}")
    if "proofs" in rep:
        lines.append("  n  rows  cols  rank  full  orthogonal  triangular")
        for r in rep["proofs"]:
            lines.append(f"  {r['n']:<2} {r['rows']:>4} {r['cols']:>5} {r['rank']:>5}  {str(r['full']):<5} {str(r['orthogonal']):<11} {r['triangular']}")
    if "demo" in rep:
        d = rep["demo"]
        for n, w in d["werner_thresholds"].items():
            lines.append(f"  Werner threshold n={n}: {_fmt(w['criterion_threshold'])} (expected {_fmt(w['expected'])})")
        a = d["appendix_b"]
        lines.append(f"  two-copy n=4 closed form at {a['lambda']}: {_fmt(a['closed_form'])} (valid state: {a['valid_state']})")
        v = d["appendix_b_valid"]
        lines.append(f"  at {v['lambda']}: closed form {_fmt(v['closed_form'])}, listed observables {_fmt(v['listed_observables_value'])}, criterion bound {_fmt(v['criterion_bound'])}, see-saw {_fmt(v['seesaw'])}")
    if "timings" in rep:
        lines.append(f"  time: {rep['timings']['total_s']:.3f} s")
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    start = time.perf_counter()
    rep = {"schema": serialization.REPORT_SCHEMA_TAG, "command": _echo(args), "seed": getattr(args, "seed", None)}
    try:
        COMMANDS[args.command](args, rep)
    except UsageError as e:
        print(f"bellcert: usage error: {e}", file=sys.stderr)
        return 2
    except StateFileError as e:
        print(f"bellcert: state file error: {e}", file=sys.stderr)
        return 1
    except InvalidArgument as e:
        print(f"bellcert: usage error: {e}", file=sys.stderr)
        return 2
    except BellCertError as e:
        print(f"bellcert: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if not args.deterministic:
        rep["timings"] = {"total_s": time.perf_counter() - start}
    serialization.validate_report(rep)
    out = serialization.dumps_report(rep) if args.format == "json" else _text(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
