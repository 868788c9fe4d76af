"""Command-line front end.

Exit codes: 0 member / success, 1 non-member / invalid certificate, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import sympy

from .certificates import Certificate, verify_certificate
from .errors import RPlusError
from .membership import (
    applicable_method,
    cyclotomic_order,
    decide_membership,
    generator_presentation,
    inverse_prime_in,
    squarefree_part,
)
from .negone import certify_negative_one
from .numfield import FieldElem, NumberField, field_from_min_poly
from .padic import places
from .poly import RatPoly, parse_poly


def parse_field(text: str) -> NumberField:
    return field_from_min_poly(parse_poly(text))


def parse_element(field: NumberField, text: str) -> FieldElem:
    """A rational ("1/3"), ascending alpha-power coordinates ("1,1/2"), or a
    polynomial in a ("1/2a+1") where a stands for alpha."""
    s = text.strip()
    if "a" in s:
        poly = parse_poly(s.replace("a", "x"))
    elif "," in s:
        poly = RatPoly([Fraction(t.strip()) for t in s.split(",")])
    else:
        return field.from_rational(Fraction(s))
    return field.from_alpha_coords(poly.coeffs)


def render(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _flat(v: Any) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return not any(isinstance(x, (dict, list)) for x in items)


def _inline(v: Any) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(obj: Any, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(render(obj)) + "\n")


def cmd_member(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    beta = parse_element(field, args.beta)
    verdict = decide_membership(field, None, beta, method=args.method, certify=args.certify)
    out = {"field": field.to_json(), "beta": beta.to_json(), **verdict.to_json()}
    emit(out, args.json)
    return 0 if verdict.member else 1


def cmd_functor_exists(args: argparse.Namespace) -> int:
    field = parse_field(args.t_prime)
    t = parse_element(field, args.t)
    alpha = field.alpha()
    for name, x in (("t", t), ("t'", alpha)):
        if x.is_rational() and x.rational().denominator == 1 and x.rational() >= 0:
            raise RPlusError(f"{name} is a nonnegative integer; the criterion needs t, t' outside Z>=0")
    verdict = decide_membership(field, None, t, certify=args.certify)
    out = {
        "field": field.to_json(),
        "t": t.to_json(),
        "functor_exists": verdict.member,
        "verdict": verdict.to_json(),
    }
    emit(out, args.json)
    return 0 if verdict.member else 1


def _rule(field: NumberField) -> tuple[str, str]:
    method = applicable_method(field, field.alpha())
    if method == "integer-case":
        a = field.alpha().rational()
        return method, "R+(alpha) = Z>=0" if a >= 0 else "R+(alpha) = Z"
    if method == "rational":
        q = field.alpha().rational().denominator
        return method, f"R+(alpha) = Z[1/{q}]"
    if method == "cyclotomic":
        n = cyclotomic_order(field)
        return method, f"1/p in R+(alpha) iff p != 1 mod {n}"
    if method == "quadratic":
        d = squarefree_part(field.disc)
        extra = " (p = 2: split iff d = 1 mod 8)"
        rule = f"1/p in R+(alpha) iff p does not split in Q(sqrt({d}))" + extra
        if field.delta > 1:
            rule += f"; primes dividing {field.delta} are always inverted"
        return method, rule
    return method, "1/p in R+(alpha) iff no place over p has v(alpha) >= 0"


def cmd_describe(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    method, rule = _rule(field)
    primes = {str(p): inverse_prime_in(field, None, p) for p in sympy.primerange(2, args.prime_bound + 1)}
    out = {"field": field.to_json(), "classification": method, "rule": rule, "inverse_prime_in": primes}
    emit(out, args.json)
    return 0


def cmd_generators(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    pres = generator_presentation(field, None, args.prime_bound)
    emit({"field": field.to_json(), **pres.to_json()}, args.json)
    return 0


def cmd_neg_one(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    cert = certify_negative_one(field)
    emit({"field": field.to_json(), "certificate": cert.to_json(), "size": cert.size}, args.json)
    return 0


def cmd_places(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    out = {str(p): [pl.to_json() for pl in places(field, p)] for p in sympy.primerange(2, args.prime_bound + 1)}
    emit({"field": field.to_json(), "places": out}, args.json)
    return 0


def cmd_oracle_verify(args: argparse.Namespace) -> int:
    field = parse_field(args.field)
    raw = args.cert
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            raw = fh.read()
    cert = Certificate.from_json(field, json.loads(raw))
    ok = verify_certificate(field, cert)
    emit({"field": field.to_json(), "valid": ok}, args.json)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rplus", description="Membership and structure of R+(alpha).")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")

    p = sub.add_parser("member", parents=[common], help="decide beta in R+(alpha)")
    p.add_argument("--field", required=True, help='minimal polynomial of alpha, e.g. "x^2-2"')
    p.add_argument("--beta", required=True, help='rational, alpha coordinates "1,1/2", or "1+a/2"-style polynomial in a')
    p.add_argument("--certify", action="store_true", help="attach a bounded-search certificate when found")
    p.add_argument("--method", choices=["integer-case", "rational", "quadratic", "cyclotomic", "valuation-general"])
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("functor-exists", parents=[common], help="is t in R+(t')?")
    p.add_argument("--t-prime", required=True, help="minimal polynomial of t'")
    p.add_argument("--t", required=True, help="t as an element of Q(t'), same syntax as --beta")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_functor_exists)

    for name, func, hlp in (
        ("describe", cmd_describe, "closed-form classification and inverted primes"),
        ("generators", cmd_generators, "the generators alpha_p"),
        ("places", cmd_places, "certified p-adic places"),
    ):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--field", required=True)
        p.add_argument("--prime-bound", type=int, default=50)
        p.set_defaults(func=func)

    p = sub.add_parser("neg-one", parents=[common], help="certificate for -1")
    p.add_argument("--field", required=True)
    p.set_defaults(func=cmd_neg_one)

    p = sub.add_parser("oracle-verify", parents=[common], help="check a certificate")
    p.add_argument("--field", required=True)
    p.add_argument("--cert", required=True, help="certificate JSON, or @path")
    p.set_defaults(func=cmd_oracle_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RPlusError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
