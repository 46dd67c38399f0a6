"""Command-line interface: ``kerovpoly {poly,genpoly,coeff,decompose,oracle,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import closedform
from .decompose import d_full
from .kerov import (
    NotInRAlgebraError,
    TruncationTooSmallError,
    generalized_kerov,
    kerov_polynomial,
    positive_kerov,
    sigma_from_sigma_prime,
    verify_positivity,
)
from .maps import build_map, is_connected
from .oracle import (
    YoungDiagram,
    diagram_from_pq,
    free_cumulants_numeric,
    mn_character,
    normalized_character,
)
from .permutations import Permutation, normalize_cycle_type, partitions_of

MAX_K = 8
MAX_MU_WEIGHT = 7
UNSAFE_ENV = "KEROVPOLY_UNSAFE"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    parts = [s for s in text.replace(" ", "").split(",") if s]
    if not parts:
        raise argparse.ArgumentTypeError("expected a non-empty comma-separated list of integers")
    try:
        values = tuple(int(s) for s in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"entries must be non-negative: {text!r}")
    return values


def _unsafe(args) -> bool:
    return args.unsafe or os.environ.get(UNSAFE_ENV, "").lower() in ("1", "true", "yes")


def _check_cap(args, what: str, value: int, cap: int) -> None:
    if value > cap and not _unsafe(args):
        raise UsageError(f"{what} = {value} exceeds the cap {cap}; pass --unsafe or set {UNSAFE_ENV}=1")


def _mu(args) -> tuple[int, ...]:
    mu = normalize_cycle_type(args.mu or ())
    if not mu:
        raise UsageError("--mu needs at least one positive part")
    return mu


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------

def cmd_poly(args) -> int:
    k = args.k
    if k < 1:
        raise UsageError("-k must be >= 1")
    _check_cap(args, "k", k, MAX_K)
    poly = kerov_polynomial(k, m=args.m, jobs=args.jobs)
    _emit(args, {"k": k, "polynomial": poly.to_json(), "text": str(poly)}, str(poly))
    return EXIT_OK


def cmd_genpoly(args) -> int:
    mu = _mu(args)
    _check_cap(args, "|mu|", sum(mu), MAX_MU_WEIGHT)
    fn = positive_kerov if args.positive else generalized_kerov
    poly = fn(mu, m=args.m, jobs=args.jobs)
    payload = {"mu": list(mu), "positive": args.positive, "polynomial": poly.to_json(), "text": str(poly)}
    _emit(args, payload, str(poly))
    return EXIT_OK


def _closed_value(formula: str, mu: tuple[int, ...], mono: tuple[int, ...]) -> Fraction:
    if formula == "linear":
        if len(mono) != 1:
            raise UsageError("linear needs a single index in --mono")
        return Fraction(closedform.linear_coefficient(mu, mono[0]))
    if formula == "quadratic":
        if len(mono) != 2:
            raise UsageError("quadratic needs two indices in --mono")
        return closedform.quadratic_coefficient(mu, *mono)
    if formula == "top":
        if len(mu) != 1:
            raise UsageError("top needs a one-part --mu (or -k)")
        return closedform.top_term_coefficient(mu[0], mono)
    if len(mu) != 2:
        raise UsageError("two-part needs a two-part --mu")
    return closedform.two_part_top_coefficient(mu[0], mu[1], mono)


def cmd_coeff(args) -> int:
    if args.k is not None:
        if args.mu:
            raise UsageError("give either -k or --mu, not both")
        args.mu = (args.k,)
    mu = _mu(args)
    mono = tuple(sorted(args.mono))
    if any(j < 2 for j in mono):
        raise UsageError("free cumulant indices start at 2")
    _check_cap(args, "|mu|", sum(mu), closedform.MAX_COUNT_K)
    try:
        value = _closed_value(args.formula, mu, mono)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"formula": args.formula, "mu": list(mu), "mono": list(mono), "closed_form": _frac(value)}
    lines = [f"closed form: {_frac(value)}"]
    status = EXIT_OK
    if args.check:
        _check_cap(args, "|mu|", sum(mu), MAX_MU_WEIGHT)
        if args.formula == "top":
            solved = kerov_polynomial(mu[0], m=args.m, jobs=args.jobs).coefficient(mono)
        else:
            solved = positive_kerov(mu, m=args.m, jobs=args.jobs).coefficient(mono)
        match = Fraction(solved) == value
        payload.update(solved=str(solved), match=match)
        lines += [f"solved:      {solved}", f"match:       {'yes' if match else 'NO'}"]
        status = EXIT_OK if match else EXIT_FAIL
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_decompose(args) -> int:
    try:
        tau = Permutation.parse(args.tau, args.degree)
        taubar = Permutation.parse(args.taubar, args.degree)
    except ValueError as exc:
        raise UsageError(f"bad permutation: {exc}") from None
    if tau.k != taubar.k:
        k = max(tau.k, taubar.k)
        if args.degree is None:
            tau, taubar = tau.embed(k), taubar.embed(k)
        else:
            raise UsageError("tau and taubar have different degrees")
    _check_cap(args, "k", tau.k, MAX_K)
    m = build_map(tau, taubar)
    result = d_full(m)
    payload = {
        "tau": str(tau),
        "taubar": str(taubar),
        "connected": is_connected(m),
        "terms": result.to_json(),
        "coefficient_sum": str(result.coefficient_sum()),
    }
    lines = [f"D(M) for tau = {tau}, taubar = {taubar}"]
    for t in result.to_json():
        erased = "{" + ", ".join(map(str, t["erased_edge_labels"])) + "}"
        lines.append(f"  erase {erased:<20} coefficient {t['coefficient']}")
    lines.append(f"coefficient sum: {result.coefficient_sum()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.lam is not None:
        if args.p is not None or args.q is not None:
            raise UsageError("give either --lambda or --p/--q")
        try:
            lam = YoungDiagram(tuple(sorted(args.lam, reverse=True)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.p is not None and args.q is not None:
        if len(args.p) != len(args.q):
            raise UsageError("--p and --q must have the same length")
        lam = diagram_from_pq(args.p, args.q)
    else:
        raise UsageError("give --lambda or both --p and --q")
    payload: dict = {"lambda": list(lam.rows), "n": lam.n}
    lines = [f"lambda = {lam}, n = {lam.n}"]
    if args.mu:
        mu = normalize_cycle_type(args.mu)
        sigma = normalized_character(lam, mu)
        chi = mn_character(lam, mu) if sum(mu) <= lam.n else None
        payload.update(mu=list(mu), chi=chi, sigma=_frac(sigma))
        lines.append(f"chi(mu={','.join(map(str, mu))}) = {chi if chi is not None else 'undefined (|mu| > n)'}")
        lines.append(f"Sigma_mu = {_frac(sigma)}")
    up_to = args.up_to if args.up_to is not None else max(6, sum(args.mu or ()) + 1)
    if up_to < 2:
        raise UsageError("--up-to must be >= 2")
    cum = free_cumulants_numeric(lam, up_to)
    payload["cumulants"] = {str(j): _frac(v) for j, v in cum.items()}
    lines += [f"R{j} = {_frac(v)}" for j, v in cum.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _verify_checks(max_k: int, max_w: int, jobs: int) -> list[tuple[str, Callable[[], list[str]]]]:
    """Named checks; each returns a list of failure descriptions."""

    def positivity() -> list[str]:
        bad = []
        for k in range(1, max_k + 1):
            ok, viol = verify_positivity(kerov_polynomial(k, jobs=jobs))
            if not ok:
                bad.append(f"K{k}: {viol}")
        return bad

    def gen_positivity() -> list[str]:
        bad = []
        for w in range(1, max_w + 1):
            for mu in partitions_of(w):
                ok, viol = verify_positivity(positive_kerov(mu, jobs=jobs))
                if not ok:
                    bad.append(f"K'{mu}: {viol}")
        return bad

    def sigma_prime() -> list[str]:
        return [f"mu={mu}" for w in range(1, max_w + 1) for mu in partitions_of(w)
                if sigma_from_sigma_prime(mu) != generalized_kerov(mu, jobs=jobs)]

    def linear_top() -> list[str]:
        bad = []
        for k in range(1, max_k + 1):
            poly = kerov_polynomial(k, jobs=jobs)
            for d in range(2, k + 2):
                c = poly.coefficient((d,))
                if closedform.linear_coefficient((k,), d) != c:
                    bad.append(f"linear k={k} R{d}")
            for mono in partitions_of(k - 1, min_part=2):
                if mono and closedform.top_term_coefficient(k, mono) != poly.coefficient(mono):
                    bad.append(f"top k={k} {mono}")
        return bad

    def quadratic() -> list[str]:
        bad = []
        for k in range(1, min(max_k, 6) + 1):
            poly = kerov_polynomial(k, jobs=jobs)
            for j in range(2, k + 2):
                for l in range(j, k + 2):
                    if closedform.quadratic_coefficient((k,), j, l) != poly.coefficient((j, l)):
                        bad.append(f"quadratic k={k} R{j}R{l}")
        return bad

    def two_part() -> list[str]:
        bad = []
        for w in range(2, max_w + 1):
            for mu in partitions_of(w):
                if len(mu) != 2:
                    continue
                poly = positive_kerov(mu, jobs=jobs)
                for mono in partitions_of(w, min_part=2):
                    if closedform.two_part_top_coefficient(mu[0], mu[1], mono) != poly.coefficient(mono):
                        bad.append(f"two-part {mu} {mono}")
        return bad

    def oracle() -> list[str]:
        rng = random.Random(0)
        bad = []
        for k in range(1, max_k + 1):
            poly = kerov_polynomial(k, jobs=jobs)
            for _ in range(5):
                size = rng.randint(1, 3)
                p = [rng.randint(0, 3) for _ in range(size)]
                q = [rng.randint(0, 3) for _ in range(size)]
                lam = diagram_from_pq(p, q)
                if lam.n == 0:
                    continue
                cum = free_cumulants_numeric(lam, k + 1)
                if poly.evaluate(cum) != normalized_character(lam, (k,)):
                    bad.append(f"K{k} at {lam}")
        return bad

    return [
        ("Kerov positivity", positivity),
        ("generalized positivity", gen_positivity),
        ("Sigma from Sigma'", sigma_prime),
        ("linear and top-term formulas", linear_top),
        ("quadratic formula", quadratic),
        ("two-part top formula", two_part),
        ("character oracle", oracle),
    ]


def cmd_verify(args) -> int:
    if args.max_k < 1 or args.max_mu_weight < 1:
        raise UsageError("bounds must be >= 1")
    _check_cap(args, "--max-k", args.max_k, MAX_K)
    _check_cap(args, "--max-mu-weight", args.max_mu_weight, MAX_MU_WEIGHT)
    rows = []
    for name, check in _verify_checks(args.max_k, args.max_mu_weight, args.jobs):
        failures = check()
        rows.append({"check": name, "passed": not failures, "failures": failures})
    all_ok = all(r["passed"] for r in rows)
    width = max(len(r["check"]) for r in rows)
    lines = [f"{r['check']:<{width}}  {'PASS' if r['passed'] else 'FAIL'}" for r in rows]
    for r in rows:
        lines += [f"  failing: {r['check']}: {f}" for f in r["failures"]]
    lines.append("all checks passed" if all_ok else "verification FAILED")
    payload = {"max_k": args.max_k, "max_mu_weight": args.max_mu_weight, "checks": rows, "passed": all_ok}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all_ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for factorization sums")
    common.add_argument("--m", type=int, default=None, help="truncation length of (p, q); automatic if omitted")
    common.add_argument("--unsafe", action="store_true", help=f"lift size caps (also {UNSAFE_ENV}=1)")

    parser = argparse.ArgumentParser(prog="kerovpoly", description="Kerov polynomials and their combinatorics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="Kerov polynomial K_k")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("genpoly", parents=[common], help="K_mu, or K'_mu with --positive")
    p.add_argument("--mu", type=_int_list, nargs="?", const=(), required=True)
    p.add_argument("--positive", action="store_true")
    p.set_defaults(func=cmd_genpoly)

    p = sub.add_parser("coeff", parents=[common], help="closed-form coefficient")
    p.add_argument("--formula", choices=("linear", "quadratic", "top", "two-part"), required=True)
    p.add_argument("--mu", type=_int_list)
    p.add_argument("-k", type=int)
    p.add_argument("--mono", type=_int_list, required=True, help="free cumulant indices, e.g. 4 or 3,2")
    p.add_argument("--check", action="store_true", help="compare with the solved polynomial")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("decompose", parents=[common], help="complete decomposition D(M) of a map")
    p.add_argument("--tau", required=True, help='cycle notation, e.g. "(1 2)(3)"')
    p.add_argument("--taubar", required=True)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", parents=[common], help="characters and free cumulants of a diagram")
    p.add_argument("--lambda", dest="lam", type=_int_list)
    p.add_argument("--p", type=_int_list)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--mu", type=_int_list)
    p.add_argument("--up-to", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="run the cross-checks")
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--max-mu-weight", type=int, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    if args.m is not None and args.m < 1:
        parser.error("--m must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncationTooSmallError, NotInRAlgebraError) as exc:
        print(f"{parser.prog} {args.command}: solver failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
