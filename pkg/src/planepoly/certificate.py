"""JSON persistence and offline re-verification of search certificates.

The re-check does not trust the solver.  Witnesses are re-verified for
membership, degree and term count.  Every excluded support carries a
Farkas vector, keyed by the monomials of the hyperplane expansion, which is
checked against a linear system rebuilt here by plain substitution.  The
set of excluded orbits is compared with a fresh enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from planepoly.bounds import min_term_lower_bound
from planepoly.classes import in_H
from planepoly.polynomial import Polynomial, substitute
from planepoly.search import (
    SearchCertificate,
    canonical_support,
    enumerate_supports,
    hyperplane_system,
)
from planepoly import serialize
from planepoly.serialize import format_rational, parse_rational

FORMAT = "planepoly-certificate"
KINDS = ("optimum", "existence", "nonexistence", "unknown")


class CertificateError(ValueError):
    """Malformed certificate file."""


def _farkas_to_json(monomials, y) -> list:
    _, _, keys = hyperplane_system(list(monomials))
    return [{"e": list(k), "y": format_rational(v)} for k, v in zip(keys, y) if v != 0]


def to_json_obj(cert: SearchCertificate) -> dict:
    return {
        "format": FORMAT,
        "kind": cert.kind,
        "parameters": {
            "n": cert.n,
            "d": cert.d,
            "N": cert.N,
            "rules": list(cert.rules),
            "lower_bound": cert.lower_bound,
            "lower_bound_source": cert.lower_bound_source,
        },
        "partial": cert.partial,
        "witnesses": [serialize.to_json_obj(w) for w in cert.witnesses],
        "exhaustion": [
            {
                "N": rec.N,
                "orbits_checked": rec.orbits_checked,
                "prune_log": dict(sorted(rec.prune_log.items())),
                "orbits": [
                    {"support": [list(m) for m in mons], "farkas": _farkas_to_json(mons, y)}
                    for mons, y in rec.orbits
                ],
            }
            for rec in cert.exhaustion
        ],
        "lp_solves": cert.lp_solves,
        "seed": cert.seed,
        "tool_version": cert.tool_version,
        "wall_time": round(cert.wall_time, 3),
    }


def dumps(cert: SearchCertificate) -> str:
    return json.dumps(to_json_obj(cert), indent=1) + "\n"


@dataclass
class LoadedCertificate:
    """A certificate as read from disk; Farkas vectors stay keyed by monomial."""

    kind: str
    n: int
    d: int
    N: Optional[int]
    rules: tuple
    lower_bound: Optional[int]
    partial: bool
    witnesses: list
    exhaustion: list  # (N, orbits_checked, [(support, {key: y})])
    raw: dict = field(repr=False, default_factory=dict)


def from_json_obj(obj) -> LoadedCertificate:
    try:
        if obj.get("format") != FORMAT:
            raise CertificateError("not a planepoly certificate")
        kind = obj["kind"]
        if kind not in KINDS:
            raise CertificateError(f"unknown certificate kind {kind!r}")
        par = obj["parameters"]
        n, d, N = par["n"], par["d"], par["N"]
        witnesses = [_witness(w) for w in obj["witnesses"]]
        exhaustion = []
        for rec in obj["exhaustion"]:
            orbits = []
            for o in rec["orbits"]:
                support = tuple(tuple(m) for m in o["support"])
                y = {tuple(t["e"]): parse_rational(t["y"]) for t in o["farkas"]}
                orbits.append((support, y))
            exhaustion.append((rec["N"], rec["orbits_checked"], orbits))
        return LoadedCertificate(
            kind=kind,
            n=n,
            d=d,
            N=N,
            rules=tuple(par["rules"]),
            lower_bound=par.get("lower_bound"),
            partial=bool(obj["partial"]),
            witnesses=witnesses,
            exhaustion=exhaustion,
            raw=obj,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise CertificateError(f"malformed certificate: {exc!r}") from None


def _witness(obj) -> Polynomial:
    try:
        return serialize.from_json_obj(obj)
    except ValueError as exc:
        raise CertificateError(f"bad witness polynomial: {exc}") from None


def loads(text: str) -> LoadedCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON: {exc}") from None
    return from_json_obj(obj)


# -- independent re-verification ------------------------------------------------


def _restricted_expansion(m, n: int) -> Polynomial:
    """``x^m`` with ``x1`` replaced by ``1 - x2 - ... - xn``."""
    images = [Polynomial.variable(n, i) for i in range(n)]
    images[0] = Polynomial.constant(n, 1) - sum(images[1:], Polynomial.zero(n))
    return substitute(Polynomial.monomial(tuple(m)), images)


def check_farkas_vector(support, y: dict, n: int) -> bool:
    """``y`` separates the hyperplane identity from strictly positive coefficients.

    With ``L(f) = sum_k y_k [x^k] f``, a valid vector has ``L(x^m) >= 0``
    for every support monomial (after the substitution), ``L(1) <= 0``,
    and at least one of these strict.
    """

    def L(f: Polynomial) -> Fraction:
        return sum((v * f.coefficient(k) for k, v in y.items()), Fraction(0))

    values = [L(_restricted_expansion(m, n)) for m in support]
    one = y.get((0,) * n, Fraction(0))
    if any(v < 0 for v in values) or one > 0:
        return False
    return any(v > 0 for v in values) or one < 0


@dataclass
class RecheckReport:
    ok: bool
    problems: list
    witnesses_checked: int = 0
    orbits_checked: int = 0

    def to_json_obj(self) -> dict:
        return {
            "ok": self.ok,
            "problems": list(self.problems),
            "witnesses_checked": self.witnesses_checked,
            "orbits_checked": self.orbits_checked,
        }


def recheck(cert) -> RecheckReport:
    """Re-verify a certificate (loaded or in memory) without trusting the search."""
    if isinstance(cert, SearchCertificate):
        cert = from_json_obj(json.loads(dumps(cert)))
    problems: list = []
    n, d, N = cert.n, cert.d, cert.N
    report = RecheckReport(True, problems)

    if cert.partial or cert.kind == "unknown":
        problems.append("certificate is partial; nothing is claimed")

    orbits_seen = set()
    for i, w in enumerate(cert.witnesses):
        report.witnesses_checked += 1
        if w.n != n:
            problems.append(f"witness {i} has {w.n} variables, expected {n}")
            continue
        if not in_H(w):
            problems.append(f"witness {i} is not in H")
        if w.degree != d:
            problems.append(f"witness {i} has degree {w.degree}, expected {d}")
        if N is not None and w.num_terms != N:
            problems.append(f"witness {i} has {w.num_terms} terms, expected {N}")
        orbit = canonical_support(w.support, n)
        if orbit in orbits_seen:
            problems.append(f"witness {i} repeats an orbit")
        orbits_seen.add(orbit)

    if cert.kind in ("optimum", "existence") and not cert.witnesses:
        problems.append(f"{cert.kind} certificate has no witness")
    if cert.kind == "nonexistence" and cert.witnesses:
        problems.append("nonexistence certificate lists witnesses")
    if cert.kind == "nonexistence" and not cert.partial and [e[0] for e in cert.exhaustion] != [N]:
        problems.append("nonexistence certificate must exhaust exactly its own N")

    if cert.kind == "optimum" and not cert.partial and N is not None:
        start = min_term_lower_bound(n, d).value if cert.rules else 1
        if cert.lower_bound != start:
            problems.append(f"search started at {cert.lower_bound}, the proved bound gives {start}")
        levels = [e[0] for e in cert.exhaustion]
        if levels != list(range(start, N)):
            problems.append(f"excluded sizes {levels} do not cover {start}..{N - 1}")

    for level, claimed, orbits in cert.exhaustion:
        if claimed != len(orbits):
            problems.append(f"N={level}: claims {claimed} orbits, lists {len(orbits)}")
        listed = set()
        for support, y in orbits:
            report.orbits_checked += 1
            if len(support) != level or any(len(m) != n for m in support):
                problems.append(f"N={level}: malformed support {support}")
                continue
            if max(sum(m) for m in support) != d:
                problems.append(f"N={level}: support {support} does not have degree {d}")
            if not check_farkas_vector(support, y, n):
                problems.append(f"N={level}: Farkas vector fails for {support}")
            listed.add(tuple(sorted(support)))
        fresh = {s.monomials for s in enumerate_supports(n, d, level, cert.rules)}
        if fresh != listed:
            problems.append(
                f"N={level}: {len(listed)} orbits listed, fresh enumeration finds {len(fresh)}"
                f" ({len(fresh - listed)} missing, {len(listed - fresh)} extra)"
            )

    report.ok = not problems
    return report


__all__ = [
    "CertificateError",
    "LoadedCertificate",
    "RecheckReport",
    "check_farkas_vector",
    "dumps",
    "from_json_obj",
    "loads",
    "recheck",
    "to_json_obj",
]
