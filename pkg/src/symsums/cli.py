"""Command-line interface: every pipeline with text and JSON output.

Exit codes are stable: 0 success, 2 parse/validation error, 3 enumeration
budget exceeded, 4 no recurrence found within the degree bound, 5 odd
characteristic where characteristic 2 is required.  Diagnostics go to
standard error; nothing is printed on the error paths.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .cyclo import CyclotomicInt, NotRationalIntegerError
from .gf import FieldError, parse_field_spec
from .symfun import (
    BudgetExceededError,
    brute_force_exp_sum,
    parse_sym_spec,
    period_for_degree,
)
from .msum import (
    OddCharacteristicError,
    diophantine_solution,
    exp_sum_multinomial,
    exp_sum_partition,
    pq_section,
)
from .closed import (
    PeriodicExponentTable,
    exp_sum_closed,
    fibonacci_mod_table,
    pisano_period,
    twisted_binomial_closed,
)
from .recur import (
    NoRecurrenceFoundError,
    char_poly,
    lcm_char_poly,
    minimal_integer_recurrence,
    minimal_poly_algebraic,
    verify_recurrence,
)
from itertools import combinations_with_replacement


def _value_text(value):
    try:
        return str(value.to_integer())
    except NotRationalIntegerError:
        return str(value)


def _value_json(value):
    try:
        return value.to_integer()
    except NotRationalIntegerError:
        return value.to_json()


def _eval_one(field, spec, n, method, budget):
    if method == "brute":
        return brute_force_exp_sum(field, spec, n, budget=budget)
    if method == "multinomial":
        return exp_sum_multinomial(field, spec, n)
    if method == "partition":
        return exp_sum_partition(field, spec, n)
    raise ValueError(f"unknown method {method}")


def _eval_range(field, spec, n_lo, n_hi, method, budget):
    if method == "closed":
        form = exp_sum_closed(field, spec)
        vals = form.eval_range(n_lo, n_hi)
        return [v.to_cyclotomic().rewrite(field.p) for v in vals]
    cache = {}
    out = []
    for n in range(n_lo, n_hi + 1):
        if method == "brute":
            out.append(brute_force_exp_sum(field, spec, n, budget=budget))
        elif method == "multinomial":
            out.append(exp_sum_multinomial(field, spec, n, cache=cache))
        elif method == "partition":
            out.append(exp_sum_partition(field, spec, n, cache=cache))
        else:
            raise ValueError(f"unknown method {method}")
    return out


def _cmd_field_info(args):
    field = parse_field_spec(args.field)
    data = {
        "p": field.p,
        "r": field.r,
        "q": field.q,
        "modulus": list(field.modulus),
        "elements": [{"index": i, "coeffs": list(field.index_to_coeffs(i)), "trace": field.trace_index(i)} for i in range(field.q)],
    }
    if args.format == "json":
        return json.dumps(data, indent=2)
    lines = [f"GF({field.q}) = GF({field.p}^{field.r}), modulus coefficients (constant first): {list(field.modulus)}"]
    for e in data["elements"]:
        lines.append(f"  alpha_{e['index']}: coeffs={e['coeffs']} trace={e['trace']}")
    return "\n".join(lines)


def _cmd_eval(args):
    field = parse_field_spec(args.field)
    spec = parse_sym_spec(args.spec, field)
    vals = _eval_range(field, spec, args.n, args.n, args.method, args.budget)
    value = vals[0]
    if args.format == "json":
        return json.dumps(
            {"field": args.field, "spec": spec.spec_string(), "n": args.n, "method": args.method, "value": _value_json(value)}
        )
    return _value_text(value)


def _cmd_sequence(args):
    field = parse_field_spec(args.field)
    spec = parse_sym_spec(args.spec, field)
    n_lo, n_hi = args.n_min, args.n_max
    if n_hi < n_lo:
        raise ValueError("--n-max must be >= --n-min")
    vals = _eval_range(field, spec, n_lo, n_hi, args.method, args.budget)
    if args.format == "json":
        return json.dumps(
            {
                "field": args.field,
                "spec": spec.spec_string(),
                "n_min": n_lo,
                "n_max": n_hi,
                "method": args.method,
                "values": [_value_json(v) for v in vals],
            }
        )
    return "\n".join(f"{n}\t{_value_text(v)}" for n, v in zip(range(n_lo, n_hi + 1), vals))


def _factored_char(field, D):
    """Irreducible factors of the characteristic polynomial with multiplicities.

    Multisets are grouped by the minimal polynomial of their eigenvalue; the
    group is Galois-stable, so its linear factors multiply to a power of the
    minimal polynomial.
    """
    factors = {}
    for ms in combinations_with_replacement(range(D), field.q - 1):
        poly = minimal_poly_algebraic(D, ms)
        entry = factors.setdefault(poly.coeffs, [poly, 0])
        entry[1] += 1
    out = []
    for poly, count in factors.values():
        assert count % poly.degree == 0
        out.append((poly, count // poly.degree))
    return out


def _cmd_recurrence(args):
    field = parse_field_spec(args.field)
    spec = parse_sym_spec(args.spec, field)
    D = period_for_degree(field.p, spec.k_max)
    data = {"field": args.field, "spec": spec.spec_string(), "mode": args.mode, "D": D}
    lines = []
    if args.mode == "char":
        poly = char_poly(field.q, D)
        groups = _factored_char(field, D)
        factored = " * ".join(f"({p})^{e}" if e > 1 else f"({p})" for p, e in groups)
        data["poly"] = poly.to_json()
        data["factors"] = [{"poly": p.to_json(), "multiplicity": e} for p, e in groups]
        lines.append(f"characteristic polynomial (degree {poly.degree}):")
        lines.append(f"  {poly}")
        lines.append(f"factored: {factored}")
    elif args.mode == "lcm":
        poly = lcm_char_poly(field, spec.k_max)
        groups = _factored_char(field, D)
        distinct = {p.coeffs: p for p, _ in groups}
        factored = " * ".join(f"({p})" for p in distinct.values())
        data["poly"] = poly.to_json()
        data["factors"] = [{"poly": p.to_json(), "multiplicity": 1} for p in distinct.values()]
        lines.append(f"lcm of minimal polynomials (degree {poly.degree}):")
        lines.append(f"  {poly}")
        lines.append(f"factored: {factored}")
    elif args.mode == "minimal":
        max_degree = args.max_degree
        if max_degree is None:
            # the minimal degree is bounded by the characteristic polynomial's
            char_degree = math.comb(D + field.q - 2, field.q - 1)
            max_degree = min(char_degree, 24)
        terms = args.terms if args.terms is not None else 2 * max_degree + 2
        vals = _eval_range(field, spec, 1, terms, "closed", args.budget)
        poly = minimal_integer_recurrence(vals, max_degree)
        cert = verify_recurrence(vals, poly)
        data["poly"] = poly.to_json()
        data["certificate"] = {"checked_range": cert.checked_range, "satisfied": cert.satisfied, "start": 1}
        lines.append(f"minimal integer recurrence (degree {poly.degree}, from n=1, {terms} terms):")
        lines.append(f"  {poly}")
        lines.append(f"certificate: satisfied={cert.satisfied} on {cert.checked_range} terms")
    else:
        raise ValueError(f"unknown mode {args.mode}")
    if args.format == "json":
        return json.dumps(data)
    return "\n".join(lines)


def _cmd_sections(args):
    field = parse_field_spec(args.field)
    spec = parse_sym_spec(args.spec, field)
    report = pq_section(field, spec, args.n)
    if args.format == "json":
        return json.dumps(report.to_json())
    lines = [f"(p,q)-section of L({args.n};{field.q}) for p={field.p}:"]
    for t, (sub, s) in enumerate(zip(report.sublists, report.sums)):
        lines.append(f"  l_{t}: {list(sub)} (sum {s})")
    lines.append(f"balanced: {report.balanced}   trivial: {report.trivial}")
    return "\n".join(lines)


def _cmd_diophantine(args):
    field = parse_field_spec(args.field)
    spec = parse_sym_spec(args.spec, field)
    sol = diophantine_solution(field, spec, args.n)
    if args.format == "json":
        return json.dumps(sol.to_json())
    lines = ["partition -> delta"]
    for lam, d in zip(sol.partitions, sol.deltas):
        lines.append(f"  {tuple(v for v in lam if v)!s:20} {d:+d}")
    lines.append(f"certified (weighted sum vanishes): {sol.certified}")
    return "\n".join(lines)


def _parse_root(text):
    """--a value "order:exp" as a root of unity."""
    order, _, exp = text.partition(":")
    order = int(order)
    exp = int(exp) if exp else 0
    return CyclotomicInt.zeta(order, exp)


def _cmd_twisted(args):
    if args.preset == "nega-hadamard":
        if args.k is None:
            raise ValueError("--preset nega-hadamard requires --k")
        D = period_for_degree(2, args.k)
        table = PeriodicExponentTable(1, D, 2, [math.comb(t, args.k) % 2 for t in range(D)])
        a = CyclotomicInt.zeta(4)
        label = f"nega-Hadamard k={args.k} (D={D})"
    elif args.preset == "pisano":
        if args.m is None:
            raise ValueError("--preset pisano requires --m")
        table = fibonacci_mod_table(args.m)
        a = CyclotomicInt.from_int(1)
        label = f"Pisano m={args.m} (period {pisano_period(args.m)})"
    else:
        if args.period is None or args.values is None:
            raise ValueError("raw twisted sums require --period and --values")
        vals = [int(v) for v in args.values.split(",")]
        if len(vals) != args.period:
            raise ValueError("--values must list exactly --period entries")
        xi_order = args.xi_order if args.xi_order is not None else max(vals) + 1
        table = PeriodicExponentTable(1, args.period, xi_order, vals)
        a = _parse_root(args.a) if args.a else CyclotomicInt.from_int(1)
        label = f"twisted sum (D={args.period}, xi order {xi_order})"
    n_lo = args.n_min if args.n_min is not None else args.n
    n_hi = args.n_max if args.n_max is not None else args.n
    if n_lo is None:
        raise ValueError("need --n or --n-min/--n-max")
    values = [twisted_binomial_closed(n, table, a) for n in range(n_lo, n_hi + 1)]
    if args.format == "json":
        return json.dumps(
            {
                "label": label,
                "n_min": n_lo,
                "n_max": n_hi,
                "values": [_value_json(v.to_cyclotomic()) for v in values],
            }
        )
    lines = [label]
    lines.extend(f"{n}\t{_value_text(v.to_cyclotomic())}" for n, v in zip(range(n_lo, n_hi + 1), values))
    return "\n".join(lines)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symsums",
        description="Exact exponential sums of symmetric polynomials over Galois fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, field=True, spec=True):
        if field:
            p.add_argument("--field", required=True, help='field spec: "q", "p^r" or "p^r/c0,c1,...,cr"')
        if spec:
            p.add_argument("--spec", required=True, help='symmetric spec: "k1:b1,k2:b2,..." (":b" optional)')
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget", type=int, default=10**8, help="max tuples for brute enumeration")

    p = sub.add_parser("field-info", help="describe a field and its element enumeration")
    add_common(p, spec=False)
    p.set_defaults(handler=_cmd_field_info)

    p = sub.add_parser("eval", help="evaluate the exponential sum at one n")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("brute", "multinomial", "partition", "closed"), default="multinomial")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("sequence", help="evaluate the exponential sum over a range of n")
    add_common(p)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=("brute", "multinomial", "partition", "closed"), default="multinomial")
    p.set_defaults(handler=_cmd_sequence)

    p = sub.add_parser("recurrence", help="characteristic / lcm / minimal recurrence polynomials")
    add_common(p)
    p.add_argument("--mode", choices=("char", "lcm", "minimal"), default="minimal")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--terms", type=int, default=None, help="sequence terms for minimal mode (from n=1)")
    p.set_defaults(handler=_cmd_recurrence)

    p = sub.add_parser("sections", help="(p,q)-section report of the multinomial list")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_sections)

    p = sub.add_parser("diophantine", help="partition deltas for characteristic 2")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_diophantine)

    p = sub.add_parser("twisted-sum", help="twisted binomial sums (nega-Hadamard / Pisano demos)")
    p.add_argument("--preset", choices=("nega-hadamard", "pisano"), default=None)
    p.add_argument("--k", type=int, default=None, help="degree for the nega-Hadamard preset")
    p.add_argument("--m", type=int, default=None, help="modulus for the Pisano preset")
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--xi-order", type=int, default=None)
    p.add_argument("--values", default=None, help="comma-separated exponent table")
    p.add_argument("--a", default=None, help='twist root a as "order:exp"')
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_twisted)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.handler(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NoRecurrenceFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OddCharacteristicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except (FieldError, NotRationalIntegerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
