r"""Command-line front end.

Usage::

    $ etahecke coeffs alpha --max 4
    $ etahecke verify thm1.1 --ell 5 7 --nmax 100
    $ etahecke decompose hecke --r -2 --s 3 --p 2 --ell 7 --side starred
    $ etahecke eigenvalue --r -2 --s 3 --p 2 --ell 13
    $ etahecke faber A --max 2
    $ etahecke identities

Exit status: 0 when every check passed, 1 when a check failed, 2 on a
configuration or truncation error.  Integers in JSON output are decimal
strings so that no consumer rounds them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import congruence, hauptmodul, qforms
from .arith import derive_params
from .exceptions import EtaHeckeError, VerificationError
from .hecke import Side, expand

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

NAMED_SERIES = {
    "alpha": qforms.ALPHA,
    "beta": qforms.BETA,
    "overpartition": qforms.OVERPARTITION,
    "pod": qforms.POD_SIGNED,
    "partition": qforms.PARTITION,
    "E": qforms.EULER,
}


class ConfigError(EtaHeckeError, ValueError):
    pass


def named_series(name, order):
    """A named series or a product spec such as ``1:-2,2:3`` through ``q^order``."""
    if name in NAMED_SERIES:
        return qforms.eta_quotient(NAMED_SERIES[name], order)
    if name == "j":
        return qforms.j_invariant(order)
    if name in ("E2", "E4", "E6"):
        return qforms.eisenstein(name, order)
    if name.startswith("phi") and name[3:].isdigit():
        return qforms.hauptmodul_phi(int(name[3:]), order)
    if ":" in name or name == "1":
        return qforms.eta_quotient(qforms.ProductSpec.parse(name), order)
    raise ConfigError(f"unknown series {name!r}")


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- coeffs -----------------------------------------------------------------


def cmd_coeffs(args):
    f = named_series(args.series, args.max)
    rows = [(n, f.coeff(n)) for n in range(min(f.valuation, 0), args.max + 1)]
    if args.format == "json":
        text = dumps({
            "series": args.series,
            "max": str(args.max),
            "rows": [{"n": str(n), "value": str(v)} for n, v in rows],
        })
    elif args.format == "csv":
        text = _csv(["n", "value"], rows)
    else:
        text = "".join(f"{n} {v}\n" for n, v in rows)
    return text, EXIT_OK


# -- verify -----------------------------------------------------------------


def _jobs(args):
    """``[(sort key, thunk)]`` for the requested theorem."""
    thm = args.theorem
    t = args.truncation
    ells = args.ell or []
    if thm == "thm1.1":
        return [((ell,), lambda ell=ell: congruence.verify_thm_1_1(ell, args.nmax, t)) for ell in ells]
    if thm == "thm1.3":
        return [
            ((ell,), lambda ell=ell: congruence.verify_thm_1_3(args.i, ell, args.cases, args.exponent, t))
            for ell in ells
        ]
    if thm == "thm1.4":
        return [
            ((ell,), lambda ell=ell: congruence.verify_thm_1_4(derive_params(args.r, args.s, args.p, ell), args.nmax, t))
            for ell in ells
        ]
    if thm == "mu-mod32":
        return [((args.ell_max,), lambda: congruence.verify_mu_mod32(args.ell_max, t))]
    if thm == "overpartition":
        return [((ell,), lambda ell=ell: congruence.verify_overpartition(ell, args.nmax, t)) for ell in ells]
    if thm == "overpartition-corollary":
        return [
            ((ell,), lambda ell=ell: congruence.overpartition_corollary(args.i, ell, args.cases, t))
            for ell in ells
        ]
    raise ConfigError(f"unknown theorem {thm!r}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise ConfigError(f"{args.theorem} needs --{', --'.join(missing)}")


_REQUIRED = {
    "thm1.1": ("ell", "nmax"),
    "thm1.3": ("i", "ell", "cases"),
    "thm1.4": ("r", "s", "p", "ell", "nmax"),
    "mu-mod32": ("ell-max",),
    "overpartition": ("ell", "nmax"),
    "overpartition-corollary": ("i", "ell", "cases"),
}


def cmd_verify(args):
    _need(args, *_REQUIRED[args.theorem])
    jobs = sorted(_jobs(args), key=lambda job: job[0])
    # validate every job before any heavy computation starts
    if args.theorem == "thm1.4":
        for ell in args.ell:
            derive_params(args.r, args.s, args.p, ell)
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        futures = [pool.submit(thunk) for _, thunk in jobs]
        reports = [f.result() for f in futures]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if args.format == "json":
        payload = [r.to_dict() for r in reports]
        text = dumps(payload[0] if len(payload) == 1 else payload)
    elif args.format == "csv":
        text = _csv(
            ["theorem", "params", "checked", "failures", "passed"],
            [
                (r.theorem, ";".join(f"{k}={v}" for k, v in r.params.items()), r.checked, len(r.failures), r.passed)
                for r in reports
            ],
        )
    else:
        lines = []
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} {r.theorem} {params} checked={r.checked} failures={len(r.failures)}")
            for k, v in r.witnesses.items():
                lines.append(f"  {k} = {v}")
        text = "\n".join(lines) + "\n"
    return text, code


# -- decompose --------------------------------------------------------------


def _poly_payload(dec, basis):
    return {
        "basis": basis,
        "constant": str(dec.constant),
        "coefficients": {str(j): str(c) for j, c in enumerate(dec.poly.coeffs) if j and c},
        "checked_to": str(dec.checked_to),
    }


def cmd_decompose(args):
    if args.kind == "atkin":
        if args.ell is None:
            raise ConfigError("atkin decomposition needs --ell")
        res = hauptmodul.atkin_Z(args.ell, args.order)
        payload = {"kind": "atkin", "ell": str(args.ell)}
        payload.update(_poly_payload(res.decomposition, "j"))
        payload["ono_identity"] = res.ono_ok
        ok = res.ono_ok
    else:
        for name in ("r", "s", "p", "ell"):
            if getattr(args, name) is None:
                raise ConfigError(f"hecke decomposition needs --{name}")
        params = derive_params(args.r, args.s, args.p, args.ell)
        side = Side(args.side)
        degree = args.degree
        if degree is None:
            degree = max(-params.delta_star, 0)
        depth = args.order + degree + 2
        g = expand(params, side, depth).quotient
        phi = qforms.hauptmodul_phi(params.p, depth + 2)
        basis = phi if side is Side.PLAIN else phi.invert()
        dec = hauptmodul.decompose(g, basis, degree)
        payload = {"kind": "hecke", "params": {k: str(v) for k, v in params.as_dict().items()}, "side": side.value}
        payload.update(_poly_payload(dec, f"Phi_{params.p}" if side is Side.PLAIN else f"Phi_{params.p}^-1"))
        ok = True
    if args.format == "json":
        text = dumps(payload)
    elif args.format == "csv":
        rows = [(0, payload["constant"])] + [(int(j), c) for j, c in payload["coefficients"].items()]
        text = _csv(["n", "value"], rows)
    else:
        terms = [payload["constant"]] + [f"{c}*B^{j}" for j, c in payload["coefficients"].items()]
        text = f"B = {payload['basis']}\n" + " + ".join(terms) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL


# -- eigenvalue -------------------------------------------------------------


def cmd_eigenvalue(args):
    params = derive_params(args.r, args.s, args.p, args.ell)
    direct = congruence.lambda_direct(params)
    via_mu = congruence.lambda_via_mu(params, args.truncation)
    diff = direct - via_mu
    payload = {
        "params": {k: str(v) for k, v in params.as_dict().items()},
        "direct": str(direct),
        "via_mu": str(via_mu),
        "difference": str(diff),
    }
    if args.format == "json":
        text = dumps(payload)
    elif args.format == "csv":
        text = _csv(["direct", "via_mu", "difference"], [(direct, via_mu, diff)])
    else:
        text = f"direct {direct}\nvia_mu {via_mu}\ndifference {diff}\n"
    return text, EXIT_OK if diff == 0 else EXIT_FAIL


# -- faber ------------------------------------------------------------------


def cmd_faber(args):
    fam = args.family
    m = args.max
    if fam == "J":
        polys = hauptmodul.faber_J(m, method=args.method)
    elif fam == "A":
        polys = hauptmodul.faber_A(m, method=args.method)
    elif fam == "P":
        polys = hauptmodul.beneish_larson_P(args.p or 2, m, method=args.method)
    else:
        if args.r is None or args.s is None or args.p is None:
            raise ConfigError("family SB needs --r, --s and --p")
        polys = hauptmodul.sB_poly(args.r, args.s, args.p, m, method=args.method)
    strs = [str(p) for p in polys]
    if args.format == "json":
        text = dumps({"family": fam, "max": str(m), "polynomials": strs})
    elif args.format == "csv":
        text = _csv(["n", "value"], list(enumerate(strs)))
    else:
        text = "".join(f"{i} {s}\n" for i, s in enumerate(strs))
    return text, EXIT_OK


# -- identities -------------------------------------------------------------


def identity_checks():
    """The standard identity suite at its default orders."""
    checks = list(qforms.theta_product_checks(200))
    checks.append(qforms.e2_star_identity(500))
    checks.append(qforms.kohler_identity(500))
    for p in qforms.GENUS_ZERO_PRIMES:
        checks.append(qforms.dq_hauptmodul_identity(p, 100))
    checks.append(qforms.pentagonal_identity(10000))
    return checks


def cmd_identities(args):
    checks = identity_checks()
    code = EXIT_OK if all(checks) else EXIT_FAIL
    if args.format == "json":
        text = dumps([
            {"name": c.name, "ok": c.ok, "order": str(c.order),
             "first_mismatch": None if c.first_mismatch is None else str(c.first_mismatch)}
            for c in checks
        ])
    elif args.format == "csv":
        text = _csv(["name", "ok", "order"], [(c.name, c.ok, c.order) for c in checks])
    else:
        text = "".join(f"{'PASS' if c.ok else 'FAIL'} {c.name} order={c.order}\n" for c in checks)
    return text, code


# -- parser -----------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="etahecke", description="Exact eta-quotient Hecke congruence toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("-o", "--output", help="write to this file instead of standard output")
    common.add_argument("--truncation", type=int, help="override the computed series order")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="dump coefficients of a series")
    p.add_argument("series", help="alpha, beta, overpartition, pod, partition, E, j, E2, E4, E6, phiP, or m:e,...")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="verify a congruence over a finite range")
    p.add_argument("theorem", choices=sorted(_REQUIRED))
    p.add_argument("--ell", type=int, nargs="+")
    p.add_argument("--nmax", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--exponent", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--ell-max", type=int)
    p.add_argument("--threads", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="polynomial decomposition in a Hauptmodul or j")
    p.add_argument("kind", choices=("hecke", "atkin"))
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--side", choices=("plain", "starred"), default="starred")
    p.add_argument("--degree", type=int)
    p.add_argument("--order", type=int, default=30)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eigenvalue", parents=[common], help="eigenvalue computed two ways")
    for name in ("r", "s", "p", "ell"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_eigenvalue)

    p = sub.add_parser("faber", parents=[common], help="Faber-type polynomial families")
    p.add_argument("family", choices=("J", "A", "P", "SB"))
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--method", choices=("invert", "geometric"), default="invert")
    p.set_defaults(func=cmd_faber)

    p = sub.add_parser("identities", parents=[common], help="run the q-series identity suite")
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except VerificationError as exc:
        print(f"etahecke: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (EtaHeckeError, ValueError) as exc:
        print(f"etahecke: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
