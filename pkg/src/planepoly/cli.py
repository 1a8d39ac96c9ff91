"""Command-line interface.

Exit codes: 0 success, 1 verified negative (not in H, infeasible,
NOT_IN_W, rejected certificate), 2 undecided (UNKNOWN or budget
exhausted), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Optional, Sequence

from planepoly import certificate, serialize
from planepoly.bounds import bound_report
from planepoly.classes import MembershipError, membership, quotient_q
from planepoly.constructions import (
    IN_W,
    NOT_IN_W,
    chain_decompose,
    family_gd,
    family_pd,
    family_unbounded,
    replay,
    w_membership,
    whitney_chain,
)
from planepoly.polynomial import Polynomial, measure
from planepoly.pullback import linear_map, map_from_h2, pullback, veronese_map
from planepoly.search import default_budget, exists_with_terms, min_terms
from planepoly.serialize import ParseError, format_rational

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3

WCHECK_BUDGET = 10_000


class InputError(Exception):
    pass


class _Output:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.float = getattr(args, "float", False)

    def poly_text(self, p: Polynomial) -> str:
        return serialize.to_text(p, float_coefficients=self.float)

    def poly(self, p: Polynomial) -> None:
        if self.json:
            sys.stdout.write(serialize.dumps(p))
        else:
            print(self.poly_text(p))

    def emit(self, obj: dict, lines: Sequence[str]) -> None:
        if self.json:
            print(json.dumps(obj, indent=1))
        else:
            for line in lines:
                print(line)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_poly(path: str, nvars: Optional[int] = None) -> Polynomial:
    text = _read_text(path)
    stripped = text.strip()
    if not stripped:
        raise InputError(f"{path}: empty input")
    if stripped.startswith("{"):
        try:
            p = serialize.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
        if nvars is not None and p.n != nvars:
            raise InputError(f"{path}: has {p.n} variables, --vars says {nvars}")
        return p
    return serialize.parse_text(stripped, nvars)


def _budget(flag: Optional[int]) -> int:
    if flag is not None:
        if flag < 1:
            raise InputError("--budget must be positive")
        return flag
    return default_budget()


# -- subcommands ----------------------------------------------------------------------


def cmd_verify(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    mem = membership(p)
    deg = None if p.is_zero() else p.degree
    obj = {
        "n": p.n,
        "in_J": mem.in_J,
        "in_P": mem.in_P,
        "in_H": mem.in_H,
        "degree": deg,
        "N": p.num_terms,
        "quotient": serialize.to_json_obj(mem.quotient) if mem.quotient is not None else None,
    }
    lines = [
        f"n: {p.n}",
        f"in_J: {str(mem.in_J).lower()}",
        f"in_P: {str(mem.in_P).lower()}",
        f"in_H: {str(mem.in_H).lower()}",
        f"degree: {deg}",
        f"N: {p.num_terms}",
    ]
    if mem.quotient is not None:
        lines.append(f"Q: {out.poly_text(mem.quotient)}")
    out.emit(obj, lines)
    return EXIT_OK if mem.in_H else EXIT_NEGATIVE


def cmd_q(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    q, rem = quotient_q(p)
    if not rem.is_zero():
        out.emit(
            {"in_J": False, "remainder": serialize.to_json_obj(rem)},
            [f"not in J: (p - 1) leaves remainder {out.poly_text(rem)}"],
        )
        return EXIT_NEGATIVE
    out.poly(q)
    return EXIT_OK


def cmd_measure(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    if p.is_zero():
        raise InputError("the zero polynomial has no measure")
    m = measure(p)
    obj = asdict(m)
    out.emit(obj, [f"{k}: {v}" for k, v in obj.items()])
    return EXIT_OK


def cmd_construct(args, out: _Output) -> int:
    fam = args.family
    if fam == "pd":
        p = family_pd(args.d)
    elif fam == "gd":
        p = family_gd(args.n, args.d)
    elif fam == "eq2":
        p = family_unbounded(args.n, args.d)
    else:
        chain = whitney_chain(args.n, args.d, args.strategy, seed=args.seed)
        if args.show_steps and not out.json:
            for i, u in enumerate(chain.steps, 1):
                print(f"# u{i} = {out.poly_text(u)}", file=sys.stderr)
        p = chain.result
    out.poly(p)
    return EXIT_OK


def _parse_groups(spec: str, n: int):
    try:
        left, right = spec.split("|")
        u = [int(t) - 1 for t in left.split(",") if t.strip()]
        v = [int(t) - 1 for t in right.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad linear map spec {spec!r}; expected e.g. 1,2|3") from None
    if set(u) & set(v) or any(not 0 <= i < n for i in u + v) or not u or not v:
        raise InputError(f"bad linear map spec {spec!r} for {n} variables")
    return u, v


def cmd_pullback(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    spec = args.map
    if spec == "veronese":
        phi = veronese_map(p.n)
    elif spec.startswith("h2:"):
        q = _read_poly(spec[3:], 2)
        phi = map_from_h2(q, p.n)
    elif spec.startswith("linear:"):
        u, v = _parse_groups(spec[7:], p.n)
        phi = linear_map(p.n, u, v)
    else:
        raise InputError(f"unknown map {spec!r}; use veronese, h2:FILE or linear:SPEC")
    out.poly(pullback(p, phi))
    return EXIT_OK


def cmd_chain(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    mem = membership(p)
    if not mem.in_J:
        out.emit({"in_J": False}, ["not in J: no X chain from 1 exists"])
        return EXIT_NEGATIVE
    steps = chain_decompose(p)
    ok = replay(p.n, steps) == p
    obj = {"steps": [serialize.to_json_obj(u) for u in steps], "replay_ok": ok}
    out.emit(obj, [f"r{i} = {out.poly_text(u)}" for i, u in enumerate(steps, 1)] + [f"replay_ok: {str(ok).lower()}"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_wcheck(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    if args.budget is not None and args.budget < 1:
        raise InputError("--budget must be positive")
    verdict = w_membership(p, budget=args.budget or WCHECK_BUDGET)
    obj = {"status": verdict.status, "nodes": verdict.nodes}
    lines = [f"status: {verdict.status}", f"nodes: {verdict.nodes}"]
    if verdict.chain is not None:
        obj["steps"] = [serialize.to_json_obj(u) for u in verdict.chain.steps]
        lines += [f"u{i} = {out.poly_text(u)}" for i, u in enumerate(verdict.chain.steps, 1)]
    if verdict.obstruction is not None:
        ob = {k: (serialize.to_json_obj(v) if isinstance(v, Polynomial) else v) for k, v in verdict.obstruction.items()}
        obj["obstruction"] = ob
        lines += [
            f"obstruction: {k} = {out.poly_text(v) if isinstance(v, Polynomial) else v}"
            for k, v in verdict.obstruction.items()
        ]
    out.emit(obj, lines)
    if verdict.status == IN_W:
        return EXIT_OK
    if verdict.status == NOT_IN_W:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_bounds(args, out: _Output) -> int:
    p = _read_poly(args.file, args.vars)
    report = bound_report(p)
    lines = [f"n: {report.n}  d: {report.d}  N: {report.N}"]
    for e in report.entries:
        if not e.applicable:
            state = "n/a"
        elif e.satisfied:
            state = "ok"
        elif e.binding:
            state = "VIOLATED"
        else:
            state = "fails (not proved here)"
        if not e.applicable:
            lines.append(f"{e.name:18s} {state}")
            continue
        value = f"{float(e.value):.6g}" if out.float else format_rational(e.value)
        lines.append(f"{e.name:18s} {e.observed} {e.relation} {value}  {state}")
    out.emit(report.to_json_obj(), lines)
    return EXIT_NEGATIVE if report.violations else EXIT_OK


def cmd_search(args, out: _Output) -> int:
    budget = _budget(args.budget)
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    kwargs = dict(budget=budget, jobs=args.jobs, time_limit=args.time_limit, prune=not args.no_prune)
    if args.exact_terms is not None:
        cert = exists_with_terms(args.n, args.d, args.exact_terms, **kwargs)
    else:
        cert = min_terms(args.n, args.d, **kwargs)
    text = certificate.dumps(cert)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    if out.json:
        sys.stdout.write(text)
    else:
        print(f"kind: {cert.kind}{' (partial)' if cert.partial else ''}")
        print(f"n: {cert.n}  d: {cert.d}  N: {cert.N}")
        for rec in cert.exhaustion:
            print(f"excluded N={rec.N}: {rec.orbits_checked} orbits, each with a Farkas vector")
        for w in cert.witnesses:
            print(f"witness: {out.poly_text(w)}")
        print(f"lp_solves: {cert.lp_solves}  wall_time: {cert.wall_time:.2f}s")
    if cert.partial:
        return EXIT_UNKNOWN
    return EXIT_NEGATIVE if cert.kind == "nonexistence" else EXIT_OK


def cmd_recheck(args, out: _Output) -> int:
    try:
        cert = certificate.loads(_read_text(args.cert))
    except certificate.CertificateError as exc:
        raise InputError(str(exc)) from None
    report = certificate.recheck(cert)
    lines = [f"recheck: {'ok' if report.ok else 'REJECTED'}",
             f"witnesses checked: {report.witnesses_checked}",
             f"excluded orbits checked: {report.orbits_checked}"]
    lines += [f"problem: {msg}" for msg in report.problems]
    out.emit(report.to_json_obj(), lines)
    if report.ok:
        return EXIT_OK
    if cert.partial or cert.kind == "unknown":
        return EXIT_UNKNOWN
    return EXIT_NEGATIVE


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--float", action="store_true", help="show coefficients as decimals")

    file_common = argparse.ArgumentParser(add_help=False, parents=[common])
    file_common.add_argument("file", help="polynomial file (JSON or text); '-' reads stdin")
    file_common.add_argument("--vars", type=int, help="number of variables for text input")

    parser = argparse.ArgumentParser(
        prog="planepoly",
        description="Polynomials with nonnegative coefficients equal to 1 on the hyperplane x1+...+xn = 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[file_common], help="membership in J, P and H").set_defaults(func=cmd_verify)
    sub.add_parser("q", parents=[file_common], help="the quotient (p - 1)/(s - 1)").set_defaults(func=cmd_q)
    sub.add_parser("measure", parents=[file_common], help="degree and term counts").set_defaults(func=cmd_measure)

    con = sub.add_parser("construct", help="named families and Whitney chains")
    fams = con.add_subparsers(dest="family", required=True)
    pd = fams.add_parser("pd", parents=[common], help="the sharp two-variable family (odd d)")
    pd.add_argument("--d", type=int, required=True)
    for name, helptext in (("gd", "the family with one last variable kept affine"), ("eq2", "the family in J but not P")):
        fp = fams.add_parser(name, parents=[common], help=helptext)
        fp.add_argument("--n", type=int, required=True)
        fp.add_argument("--d", type=int, required=True)
    wh = fams.add_parser("whitney", parents=[common], help="a Whitney chain from 1")
    wh.add_argument("--n", type=int, required=True)
    wh.add_argument("--d", type=int, required=True)
    wh.add_argument("--strategy", choices=("last-monomial", "random"), default="last-monomial")
    wh.add_argument("--seed", type=int, default=0)
    wh.add_argument("--show-steps", action="store_true", help="print the steps on stderr")
    con.set_defaults(func=cmd_construct)

    pb = sub.add_parser("pullback", parents=[file_common], help="pull back along a map into the hyperplane")
    pb.add_argument("--map", required=True, help="veronese | h2:FILE | linear:U|V (1-based indices, e.g. 1,2|3)")
    pb.set_defaults(func=cmd_pullback)

    sub.add_parser("chain", parents=[file_common], help="X-chain decomposition from 1").set_defaults(func=cmd_chain)

    wc = sub.add_parser("wcheck", parents=[file_common], help="decide membership in W within a budget")
    wc.add_argument("--budget", type=int)
    wc.set_defaults(func=cmd_wcheck)

    sub.add_parser("bounds", parents=[file_common], help="degree and term-count bounds").set_defaults(func=cmd_bounds)

    se = sub.add_parser("search", parents=[common], help="exhaustive minimal-term search")
    se.add_argument("--n", type=int, required=True)
    se.add_argument("--d", type=int, required=True)
    se.add_argument("--exact-terms", type=int, help="decide existence with exactly K terms")
    se.add_argument("--budget", type=int, help="maximum number of supports to solve")
    se.add_argument("--time-limit", type=float, help="wall-clock limit in seconds")
    se.add_argument("--jobs", type=int, default=1)
    se.add_argument("--no-prune", action="store_true", help="brute force over every subset")
    se.add_argument("--out", help="write the certificate JSON here")
    se.set_defaults(func=cmd_search)

    rc = sub.add_parser("recheck", parents=[common], help="re-verify a certificate file offline")
    rc.add_argument("cert")
    rc.set_defaults(func=cmd_recheck)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    out = _Output(args)
    try:
        return args.func(args, out)
    except MembershipError as exc:
        print(f"planepoly: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (InputError, ParseError, ValueError) as exc:
        print(f"planepoly: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
