"""Command-line entry point.

Exit status: 0 when every check passes, 1 on an identity violation, 2 on a
usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .acceptance import CRITERIA, SuiteConfig, run_suite
from .demazure import closed_form, transport_orbit
from .fock import verify_commuting_currents, verify_transfer_exponential
from .model import (
    GENERIC_COLORED,
    GENERIC_SUPERCOLORED,
    FAMILIES,
    SystemSpec,
    enumerate_states,
    partition_function,
    twist_for_mode,
)
from .model.weights import METAPLECTIC_ONLY
from .report import Report, jsonable
from .solvability import verify_rrr, verify_rtt
from .whittaker import conventions, verify_duality_C, verify_tokuyama

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class ConfigError(UsageError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def load_config(path: str) -> SuiteConfig:
    """Read ``key = value`` lines; unknown keys, duplicates and bad values are errors."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    known = set(SuiteConfig.keys())
    seen: dict[str, int] = {}
    values = {}
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", no)
        key, _, val = (s.strip() for s in line.partition("="))
        if key not in known:
            raise ConfigError(f"unknown key {key!r}", no)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key]})", no)
        seen[key] = no
        try:
            values[key] = int(val)
        except ValueError:
            raise ConfigError(f"value for {key!r} must be an integer", no) from None
    try:
        return SuiteConfig(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="iceduality", description="Exact lattice-model identities.")
    p.add_argument("--out", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", choices=("text", "json"), default=argparse.SUPPRESS)

    pf = sub.add_parser("pf", help="partition function of one system")
    common(pf)
    pf.add_argument("--m", type=int, required=True)
    pf.add_argument("--rows", type=int)
    pf.add_argument("--mu", type=_ints, required=True)
    bnd = pf.add_mutually_exclusive_group(required=True)
    bnd.add_argument("--sigma", type=_ints)
    bnd.add_argument("--theta", type=_ints)
    pf.add_argument("--family", choices=FAMILIES)
    pf.add_argument("--mode", choices=("generic", "iwahori", "metaplectic"), default="generic")
    pf.add_argument("--columns", type=int)
    pf.add_argument("--states", action="store_true", help="include the state dump")

    ybe = sub.add_parser("ybe", help="Yang-Baxter checks")
    common(ybe)
    ybe.add_argument("--check", choices=("rtt", "rrr"), required=True)
    ybe.add_argument("--m", type=int, required=True)
    ybe.add_argument("--mode", choices=("generic", "iwahori", "metaplectic"), default="generic")
    ybe.add_argument("--fused", action="store_true")
    ybe.add_argument("--shift", type=int, default=1)

    dm = sub.add_parser("demazure", help="orbit transport against enumeration")
    common(dm)
    dm.add_argument("--m", type=int, required=True)
    dm.add_argument("--mu", type=_ints, required=True)
    dm.add_argument("--sigma", type=_ints, required=True)
    dm.add_argument("--target", type=_ints, required=True)
    dm.add_argument("--mode", choices=("generic", "iwahori", "metaplectic"), default="generic")

    tk = sub.add_parser("tokuyama", help="metaplectic Tokuyama formula")
    common(tk)
    tk.add_argument("--n", type=int, required=True)
    tk.add_argument("--rows", type=int, required=True)
    tk.add_argument("--lambda", dest="lam", type=_ints, default=())
    tk.add_argument("--theta", type=int, default=0)

    du = sub.add_parser("duality", help="Iwahori/metaplectic duality constants")
    common(du)
    du.add_argument("--n", type=int, required=True)
    du.add_argument("--theta", type=_ints, required=True)
    du.add_argument("--mu", type=_ints, required=True)

    fk = sub.add_parser("fock", help="transfer matrix against the Hamiltonian")
    common(fk)
    fk.add_argument("--m", type=int, required=True)
    fk.add_argument("--energy", type=int, default=4)
    fk.add_argument("--degree", type=int, default=2)
    fk.add_argument("--currents", action="store_true", help="also check that the currents commute")

    st = sub.add_parser("suite", help="run the acceptance battery")
    common(st)
    st.add_argument("--config")
    st.add_argument("--only", type=_ints)
    return p


def _spec_from(args) -> SystemSpec:
    if args.rows is not None and args.rows != len(args.mu):
        raise UsageError("--rows does not match the length of --mu")
    family = args.family or (GENERIC_SUPERCOLORED if args.theta is not None else GENERIC_COLORED)
    boundary = args.theta if args.theta is not None else args.sigma
    if args.sigma is not None and family != GENERIC_COLORED:
        # sigma given for a supercolored family: theta = -sigma
        boundary = tuple(-s for s in args.sigma)
    if args.theta is not None and family == GENERIC_COLORED:
        boundary = tuple(-t for t in args.theta)
    if family in METAPLECTIC_ONLY:
        twist = None
    else:
        twist = twist_for_mode(args.mode, args.m)
    return SystemSpec(args.m, args.mu, boundary, family, twist, args.columns)


def _pf(args) -> tuple[dict, list[Report]]:
    spec = _spec_from(args)
    Z = partition_function(spec)
    body = {
        "spec": {"m": spec.m, "mu": list(spec.mu), "boundary": list(spec.boundary), "family": spec.family,
                 "mode": spec.twist.mode, "columns": spec.columns},
        "partition_function": str(Z),
        "terms": Z.to_json(),
    }
    if args.states:
        body["states"] = [s.dump() for s in enumerate_states(spec)]
    return body, []


def _ybe(args):
    tw = twist_for_mode(args.mode, args.m)
    if args.check == "rtt":
        if args.fused:
            reps = [verify_rtt(tw, fused=True)]
        else:
            reps = [verify_rtt(tw, c, shift=args.shift) for c in range(1, args.m + 1)]
    else:
        ks = [None] if args.fused else [None] + list(range(1, args.m + 1))
        reps = [verify_rrr(tw, k) for k in ks]
    return {}, reps


def _demazure(args):
    tw = twist_for_mode(args.mode, args.m)
    spec = SystemSpec(args.m, args.mu, args.sigma, twist=tw)
    got = transport_orbit(spec, args.target)
    want = partition_function(spec.with_boundary(args.target))
    rep = Report("demazure-transport", {"m": args.m, "mu": list(args.mu), "sigma": list(args.sigma),
                                        "target": list(args.target), "mode": args.mode})
    rep.checked = 1
    if got != want:
        rep.violate(transported=got, enumerated=want)
    body = {"transported": str(got)}
    if len(set(args.target)) == len(args.target):
        _, audit = closed_form(args.mu, args.target, tw)
        body["constant_audit"] = audit.to_json()
    return body, [rep]


def _tokuyama(args):
    return {}, [verify_tokuyama(args.n, args.rows, args.lam, args.theta)]


def _duality(args):
    return {}, [verify_duality_C(args.n, args.theta, args.mu)]


def _fock(args):
    reps = [verify_transfer_exponential(args.energy, args.degree, args.m)]
    if args.currents:
        reps.append(verify_commuting_currents(args.energy, args.m))
    return {}, reps


def _suite(args):
    cfg = load_config(args.config) if args.config else SuiteConfig()
    if args.only:
        known = {k for k, _, _ in CRITERIA}
        bad = [k for k in args.only if k not in known]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    reps = run_suite(cfg, only=set(args.only) if args.only else None)
    return {"config": asdict(cfg)}, reps


VERBS = {"pf": _pf, "ybe": _ybe, "demazure": _demazure, "tokuyama": _tokuyama, "duality": _duality,
         "fock": _fock, "suite": _suite}


def render(run: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(jsonable(run), sort_keys=True, indent=2)
    lines = [f"command: {' '.join(run['command'])}"]
    if "partition_function" in run:
        lines.append(f"Z = {run['partition_function']}")
    for key in ("transported",):
        if key in run:
            lines.append(f"{key}: {run[key]}")
    if "constant_audit" in run:
        a = run["constant_audit"]
        lines.append(f"reference constant ratio: {a['ratio']} (consistent: {a['consistent']})")
    for r in run.get("reports", []):
        lines.append(r["summary"])
        for key, val in sorted(r["notes"].items()):
            lines.append(f"    {key}: {json.dumps(jsonable(val), sort_keys=True)}")
        for v in r["violations"][:5]:
            lines.append(f"    violation: {json.dumps(v, sort_keys=True)}")
    if "conventions" in run:
        for k, v in sorted(run["conventions"].items()):
            lines.append(f"convention {k}: {v}")
    lines.append(f"status: {'PASS' if run['exit_status'] == 0 else 'FAIL'}")
    return "\n".join(lines)


def parse_and_dispatch(argv) -> tuple[dict, int]:
    args = build_parser().parse_args(argv)
    body, reports = VERBS[args.verb](args)
    run = {"command": list(argv), **body}
    if reports:
        run["reports"] = [dict(r.to_json(), summary=r.summary()) for r in reports]
    if args.verb in ("tokuyama", "duality", "suite", "demazure"):
        run["conventions"] = conventions()
    status = EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION
    run["exit_status"] = status
    return run, status


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if _wants_json(argv) else "text"
    try:
        run, status = parse_and_dispatch(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(run, fmt))
    return status


def _wants_json(argv) -> bool:
    for i, a in enumerate(argv):
        if a == "--out" and i + 1 < len(argv):
            return argv[i + 1] == "json"
        if a == "--out=json":
            return True
    return False


if __name__ == "__main__":
    sys.exit(main())
