"""Command line interface: ``padicgerm <command> ...`` or ``python -m padicgerm``.

Exit codes: 0 success, 1 a checked property failed, 2 bad input or configuration.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import branching, cartan, germs, invariants, lfactors, orbital, volumes
from .errors import ConfigError, DegenerateInputError, DomainError, FitError
from .verify import SUITES, VerifyConfig, run_verify

FORMATS = ("json", "csv", "latex")


class CliError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}") from None


def _fracs(text):
    try:
        return tuple(Fraction(v.strip()) for v in text.split(",") if v.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(f"expected comma-separated rationals, got {text!r}") from None


def _x_range(text):
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from None


# formatting --------------------------------------------------------------


def _table(payload):
    """(header, rows) for table-shaped payloads, else a key/value listing."""
    if "table" in payload:
        return payload["table"]["header"], payload["table"]["rows"]
    return ["key", "value"], [[k, json.dumps(v) if isinstance(v, (dict, list)) else v] for k, v in payload.items()]


def _latex_cell(v):
    s = str(v)
    return s.replace("_", r"\_").replace("^", r"\^{}").replace("*", " ")


def render(payload, fmt):
    if fmt == "json":
        body = {k: v for k, v in payload.items() if k != "table"}
        return json.dumps(body, sort_keys=True, indent=2)
    header, rows = _table(payload)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = [r"\begin{tabular}{" + "l" * len(header) + "}", " & ".join(header) + r" \\", r"\hline"]
    lines += [" & ".join(_latex_cell(c) for c in row) + r" \\" for row in rows]
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


# commands ----------------------------------------------------------------


def cmd_vol(args):
    xs = _x_range(args.x)
    values = [volumes.vol(args.n, args.alpha, x, args.method).to_text() for x in xs]
    params = {"n": args.n, "alpha": args.alpha, "method": args.method}
    if len(xs) == 1:
        params["x"] = xs[0]
        out = {"params": params, "value": values[0]}
    else:
        out = {"params": params, "values": [{"x": x, "value": v} for x, v in zip(xs, values)]}
    out["table"] = {"header": ["x", "value"], "rows": [[x, v] for x, v in zip(xs, values)]}
    return out, 0


def cmd_germ(args):
    g = germs.germ_of_vol(args.n, args.alpha)
    out = g.to_json()
    out["table"] = {"header": ["a", "b", "coeff"], "rows": [[t["a"], t["b"], t["coeff"]] for t in out["terms"]]}
    return out, 0


def cmd_cell(args):
    lam = cartan.SignedPartition(_ints(args.lam))
    out = {"lambda": list(lam), "volume": cartan.cell_volume(lam).to_text()}
    status = 0
    if args.p is not None:
        out["volume_at_p"] = str(cartan.cell_volume(lam).evaluate(args.p))
    if args.oracle:
        if args.p is None:
            raise CliError("--oracle needs -p")
        out["oracle_count"] = cartan.count_cosets_oracle(lam, args.p)
        out["match"] = str(out["oracle_count"]) == out["volume_at_p"]
        status = 0 if out["match"] else 1
    return out, status


def cmd_orbital(args):
    phi = orbital.OrbitalProfile.from_json(_load_json(args.profile))
    out = {"n": phi.n, "N": phi.N, "x": args.x, "value": orbital.orbital_direct(phi, args.x).to_text()}
    status = 0
    if args.germ:
        g = orbital.orbital_germ(phi)
        out["germ"] = g.to_json()
        if args.x >= g.validity_from:
            out["germ_value"] = germs.eval_germ(g, args.x).to_text()
            out["match"] = out["germ_value"] == out["value"]
            status = 0 if out["match"] else 1
    return out, status


def _torus(text):
    factors = []
    for part in text.split(","):
        try:
            d, e = part.split(":")
            factors.append((int(d), int(e)))
        except ValueError:
            raise CliError(f"torus factors look like 2:1,1:-1, got {text!r}") from None
    return lfactors.UnramifiedTorusData(tuple(factors))


def cmd_lfactor(args):
    D = args.D
    if args.kind == "tate":
        if not args.torus:
            raise CliError("tate needs --torus")
        direct, closed = lfactors.tate_series(_torus(args.torus), D)
        out = {"direct": direct.to_json()["coeffs"], "closed": closed.to_json()["coeffs"], "equal": direct == closed}
        out["table"] = {"header": ["k", "direct", "closed"], "rows": [[k, a, b] for k, (a, b) in enumerate(zip(out["direct"], out["closed"]))]}
        return out, 0 if out["equal"] else 1
    if not args.satake:
        raise CliError(f"{args.kind} needs --satake")
    s = lfactors.SatakeData(_fracs(args.satake), Fraction(args.q))
    if args.kind == "bf":
        holds = lfactors.bf_unramified_check(s, args.eta, args.eta0, D, args.convention)
        return {"satake": [str(a) for a in s.params], "q": str(s.q_val), "D": D, "identity_holds": holds}, 0 if holds else 1
    if args.kind == "std":
        series = lfactors.std_lfactor(s, args.eta, D)
    else:
        series = lfactors.ext_sq_lfactor(s, args.eta, D, args.convention)
    out = series.to_json()
    out["table"] = {"header": ["k", "coeff"], "rows": list(enumerate(out["coeffs"]))}
    return out, 0


def cmd_transfer(args):
    data = _load_json(args.gamma)
    gamma = data["gamma"] if isinstance(data, dict) else data
    w = _fracs(args.w)
    omega = invariants.transfer_factor(gamma, list(w), args.signs, args.p)
    x = invariants.project_sym(gamma, args.p)
    return {
        "omega": omega,
        "car_lin": [str(c) for c in invariants.car_lin(x)],
        "strongly_regular": invariants.is_strongly_regular(x, list(w)),
    }, 0


def cmd_branch(args):
    lam = branching.DominantWeight(_ints(args.weight))
    return {
        "weight": list(lam),
        "multiplicity": branching.branching_multiplicity(lam),
        "self_associate": branching.self_associate(lam),
    }, 0


def cmd_verify(args):
    suites = tuple(s.strip() for s in args.suites.split(",")) if args.suites != "all" else SUITES
    cfg = VerifyConfig(
        suites=suites,
        n_max=args.n_max,
        x_max=args.x_max,
        seeds=args.seeds,
        rng_seed=args.seed if args.seed is not None else 0,
        primes=_ints(args.primes),
        jobs=args.jobs,
    )
    report = run_verify(cfg)
    out = report.to_dict()
    rows = [[s, d["passed"], d["failed"], d["skipped"]] for s, d in out["suites"].items()]
    out["table"] = {"header": ["suite", "passed", "failed", "skipped"], "rows": rows}
    return out, report.exit_status


# parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default json)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed for sweeps")

    parser = argparse.ArgumentParser(prog="padicgerm", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vol", parents=[common], help="weighted volume vol_{n,alpha}(x)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-a", "--alpha", type=int, required=True)
    p.add_argument("-x", required=True, help="an integer, or lo:hi for a table")
    p.add_argument("--method", choices=sorted(volumes.METHODS), default="recur2")
    p.set_defaults(func=cmd_vol)

    p = sub.add_parser("germ", parents=[common], help="germ expansion of vol_{n,alpha}")
    p.add_argument("--vol", action="store_true", required=True, help="expand the volume family")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-a", "--alpha", type=int, required=True)
    p.set_defaults(func=cmd_germ)

    p = sub.add_parser("cell", parents=[common], help="Cartan cell volume")
    p.add_argument("--lambda", dest="lam", required=True, help="weakly increasing, e.g. 0,1,2")
    p.add_argument("--oracle", action="store_true", help="compare with a sublattice count")
    p.add_argument("-p", type=int)
    p.set_defaults(func=cmd_cell)

    p = sub.add_parser("orbital", parents=[common], help="contracted orbital integral of a profile")
    p.add_argument("--profile", required=True, help="profile JSON file")
    p.add_argument("-x", type=int, required=True)
    p.add_argument("--germ", action="store_true")
    p.set_defaults(func=cmd_orbital)

    p = sub.add_parser("lfactor", parents=[common], help="unramified L-factors")
    p.add_argument("kind", choices=("std", "extsq", "tate", "bf"))
    p.add_argument("--satake", help="Satake parameters, e.g. 2,1/2")
    p.add_argument("-q", default="3", help="residue cardinality")
    p.add_argument("--eta", type=int, default=1, choices=(1, -1), help="sign of eta (eta_1 for bf)")
    p.add_argument("--eta0", type=int, default=1, choices=(1, -1), help="sign of eta' (bf only)")
    p.add_argument("-D", type=int, default=6, help="truncation order")
    p.add_argument("--convention", choices=lfactors.CONVENTIONS, default="pairs-ordered")
    p.add_argument("--torus", help="tate only: degree:sign pairs, e.g. 2:1,1:-1")
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("transfer", parents=[common], help="transfer factor Omega(gamma, w)")
    p.add_argument("--gamma", required=True, help="JSON file with a 2n x 2n matrix")
    p.add_argument("--w", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--signs", default="q,1,q", help="eta_0,eta_1,eta_2 each 1 or q")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("branch", parents=[common], help="GL_n x GL_n branching multiplicity")
    p.add_argument("--weight", required=True, help="weakly decreasing; use --weight=-1,... for a leading minus")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suites", default="all", help=f"comma list from {','.join(SUITES)} or 'all'")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--x-max", type=int, default=6)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    if not hasattr(args, "seed"):
        args.seed = None
    try:
        payload, status = args.func(args)
    except (CliError, ConfigError, DomainError, DegenerateInputError, KeyError, TypeError) as exc:
        print(f"padicgerm: error: {exc}", file=sys.stderr)
        return 2
    except FitError as exc:
        print(f"padicgerm: fit failed at x={exc.x}: {exc}", file=sys.stderr)
        return 1
    print(render(payload, fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
