"""Command-line front end: parsing, dispatch, and JSON/CSV/text reports.

Every invocation emits a single report envelope that echoes the full
configuration (including the seed), so any number in a report can be
reproduced from the report alone. Envelopes are serialized with sorted
keys and no timestamp by default, making byte-identical output a property
of the configuration; pass --stamp to record wall-clock time at the cost
of that reproducibility.

Exit codes: 0 on success (including a failing inclusion test, which is a
valid answer), 1 on usage or input errors, 2 when a verify sweep finds a
law violation. The theorem says 2 cannot happen, so that exit code is a
loud bug report.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__, ff, jacobian, reciprocity, torsion
from .errors import PolynomialSyntaxError, SplitlawError
from .poly import IntegerPolynomial, Polynomial, factorize
from .reciprocity import DEFAULT_SEED

SEED_ENV_VAR = "SPLITLAW_SEED"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


@dataclass
class RunConfig:
    """Everything a subcommand needs; echoed verbatim into the report."""

    command: str
    polynomials: tuple[str, ...] = ()
    prime: int | None = None
    bound: int | None = None
    seed: int = DEFAULT_SEED
    fmt: str = "json"
    output: str | None = None
    workers: int = 1
    ext_cap: int = ff.DEFAULT_EXT_CAP
    enum_cap: int = jacobian.DEFAULT_ENUM_CAP
    group_order: int | None = None
    genus: int | None = None
    coeffs: tuple[int, ...] | None = None
    stamp: bool = False


# ---------------------------------------------------------------------------
# Polynomial text format
# ---------------------------------------------------------------------------


def parse_polynomial(text: str) -> IntegerPolynomial:
    """Parse "c0,c1,..." (ascending) or sparse symbolic "x^3 - 2" input.

    Whitespace-insensitive; accepts the unicode minus sign. Errors carry
    the character position of the offending token.
    """
    s = text.replace("−", "-")
    if "," in s:
        return _parse_coeff_list(s)
    return _parse_symbolic(s)


def _parse_coeff_list(s: str) -> IntegerPolynomial:
    coeffs = []
    pos = 0
    for part in s.split(","):
        token = part.strip()
        try:
            coeffs.append(int(token))
        except ValueError:
            raise PolynomialSyntaxError(
                f"expected an integer coefficient, got {token!r}", position=pos
            ) from None
        pos += len(part) + 1
    return IntegerPolynomial(coeffs)


def _parse_symbolic(s: str) -> IntegerPolynomial:
    terms: dict[int, int] = {}
    i, n = 0, len(s)

    def skip_ws(j: int) -> int:
        while j < n and s[j].isspace():
            j += 1
        return j

    def read_int(j: int) -> tuple[int, int]:
        start = j
        while j < n and s[j].isdigit():
            j += 1
        if j == start:
            raise PolynomialSyntaxError("expected digits", position=start)
        return int(s[start:j]), j

    i = skip_ws(i)
    if i == n:
        raise PolynomialSyntaxError("empty polynomial", position=0)
    first = True
    while i < n:
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i = skip_ws(i + 1)
        elif not first:
            raise PolynomialSyntaxError(
                f"expected '+' or '-', got {s[i]!r}", position=i
            )
        if i >= n:
            raise PolynomialSyntaxError("dangling sign", position=n)
        coeff = None
        if s[i].isdigit():
            coeff, i = read_int(i)
            i = skip_ws(i)
            if i < n and s[i] == "*":
                i = skip_ws(i + 1)
                if i >= n or s[i] != "x":
                    raise PolynomialSyntaxError("expected 'x' after '*'", position=i)
        exp = 0
        if i < n and s[i] == "x":
            exp = 1
            i = skip_ws(i + 1)
            if i < n and s[i] == "^":
                i = skip_ws(i + 1)
                exp, i = read_int(i)
                i = skip_ws(i)
        elif coeff is None:
            raise PolynomialSyntaxError(
                f"expected a term, got {s[i]!r}", position=i
            )
        terms[exp] = terms.get(exp, 0) + sign * (1 if coeff is None else coeff)
        i = skip_ws(i)
        first = False
    coeffs = [0] * (max(terms) + 1)
    for exp, c in terms.items():
        coeffs[exp] = c
    return IntegerPolynomial(coeffs)


def sieve_primes(bound: int) -> list[int]:
    """All primes <= bound, ascending."""
    return reciprocity.sieve_primes(bound)


# ---------------------------------------------------------------------------
# JSON building blocks
# ---------------------------------------------------------------------------


def _poly_json(f: IntegerPolynomial) -> dict:
    return {"text": str(f), "coefficients": list(f.coeffs)}


def _fraction_json(q: Fraction | None) -> dict | None:
    if q is None:
        return None
    return {
        "numerator": q.numerator,
        "denominator": q.denominator,
        "value": float(q),
    }


def _field_poly_json(f: Polynomial) -> list:
    """Coefficient array; prime-field values are ints, extension values lists."""
    return [c if isinstance(c, int) else list(c) for c in f.coeffs]


def _splitting_json(st) -> list[list[int]]:
    return [[d, m] for d, m in st.pairs]


# ---------------------------------------------------------------------------
# Subcommand payloads: each returns (payload, records_key, fieldnames, exit)
# ---------------------------------------------------------------------------


def _cmd_factor(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    p = config.prime
    ctx = ff.PrimeFieldContext(p)
    fbar = f.reduce_mod(ctx)
    if fbar.is_zero:
        raise SplitlawError(f"polynomial vanishes identically mod {p}")
    fact = factorize(fbar, f"{config.seed}:{p}")
    st = fact.splitting_type()
    factors = [
        {
            "coefficients": _field_poly_json(poly),
            "degree": poly.degree,
            "multiplicity": mult,
            "text": str(poly),
        }
        for poly, mult in fact.factors
    ]
    payload = {
        "polynomial": _poly_json(f),
        "p": p,
        "splitting_type": _splitting_json(st),
        "all_linear": st.all_linear,
        "squarefree": st.squarefree,
        "factors": factors,
    }
    fields = ["coefficients", "degree", "multiplicity", "text"]
    return payload, "factors", fields, EXIT_OK


def _cmd_torsion(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    p = config.prime
    ctx = ff.PrimeFieldContext(p)
    fbar = f.reduce_mod(ctx)
    curve = jacobian.curve_new(fbar)
    sub = torsion.two_torsion_points(curve, seed=f"{config.seed}:{p}")
    elements = [
        {"u": _field_poly_json(D.u), "v": _field_poly_json(D.v)}
        for D in sub.elements
    ]
    payload = {
        "polynomial": _poly_json(f),
        "p": p,
        "genus": curve.genus,
        "n_factors": sub.n,
        "rank": sub.rank,
        "count": len(sub.elements),
        "elements": elements,
    }
    return payload, "elements", ["u", "v"], EXIT_OK


def _verify_record_json(r: reciprocity.PrimeRecord) -> dict:
    return {
        "p": r.p,
        "splitting": _splitting_json(r.splitting),
        "torsion_rank": r.torsion_rank,
        "splits_completely": r.splits_completely,
        "law_consistent": r.law_consistent,
    }


def _cmd_verify(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    report = reciprocity.verify_law(
        f, config.bound, seed=config.seed, workers=config.workers
    )
    records = [_verify_record_json(r) for r in report.records]
    payload = {
        "polynomial": _poly_json(f),
        "genus": report.genus,
        "bound": report.bound,
        "bad_primes": list(report.bad_primes),
        "good_count": len(report.records),
        "spl": list(report.spl),
        "verdict": report.verdict,
        "density": _fraction_json(report.density),
        "violations": [_verify_record_json(r) for r in report.violations()],
        "records": records,
    }
    fields = ["p", "splitting", "torsion_rank", "splits_completely", "law_consistent"]
    status = EXIT_OK if report.verdict else EXIT_VIOLATION
    return payload, "records", fields, status


def _cmd_spl(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    primes = reciprocity.spl_set(f, config.bound)
    payload = {
        "polynomial": _poly_json(f),
        "bound": config.bound,
        "count": len(primes),
        "primes": [{"p": p} for p in primes],
    }
    return payload, "primes", ["p"], EXIT_OK


def _cmd_density(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    rep = reciprocity.density_report(f, config.bound, config.group_order)
    record = {
        "bound": rep.bound,
        "good_count": rep.good_count,
        "split_count": rep.split_count,
        "observed": _fraction_json(rep.observed),
        "group_order": rep.group_order,
        "deviation": _fraction_json(rep.deviation),
    }
    payload = {"polynomial": _poly_json(f), "records": [record]}
    fields = [
        "bound",
        "good_count",
        "split_count",
        "observed",
        "group_order",
        "deviation",
    ]
    return payload, "records", fields, EXIT_OK


def _cmd_include(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    h = parse_polynomial(config.polynomials[1])
    rep = reciprocity.inclusion_check(f, h, config.bound)
    payload = {
        "f": _poly_json(f),
        "h": _poly_json(h),
        "bound": rep.bound,
        "holds": rep.holds,
        "good_count": rep.good_count,
        "exception_count": len(rep.exceptions),
        "first_counterexample": rep.first_counterexample,
        "exceptions": [{"p": p} for p in rep.exceptions],
    }
    return payload, "exceptions", ["p"], EXIT_OK


def _cmd_frobenius(config: RunConfig):
    f = parse_polynomial(config.polynomials[0])
    records = []
    for p in reciprocity.good_primes(f, config.bound):
        fbar = f.reduce_mod(p)
        per_seed = f"{config.seed}:{p}"
        perm = torsion.frobenius_permutation(fbar, p, per_seed, cap=config.ext_cap)
        M = torsion.frobenius_matrix(fbar, p, per_seed, cap=config.ext_cap)
        records.append(
            {
                "p": p,
                "splitting_degree": math.lcm(
                    *(d for d, _ in reciprocity.splitting_type_mod_p(
                        f, p, seed=config.seed
                    ).pairs)
                ),
                "matrix": M.to_lists(),
                "order": M.order(),
                "permutation": perm,
                "permutation_order": torsion.permutation_order(perm),
                "is_identity": M.is_identity,
                "splits_completely": reciprocity.splits_completely(f, p),
            }
        )
    payload = {
        "polynomial": _poly_json(f),
        "bound": config.bound,
        "size": 2 * ((f.degree - 1) // 2),
        "records": records,
    }
    fields = [
        "p",
        "splitting_degree",
        "matrix",
        "order",
        "permutation",
        "permutation_order",
        "is_identity",
        "splits_completely",
    ]
    return payload, "records", fields, EXIT_OK


def _cmd_blowup(config: RunConfig):
    charts = torsion.blowup_chain(config.genus, config.coeffs, config.prime)
    records = [
        {
            "step": c.step,
            "variables": list(c.variables),
            "monomial": {"variable": c.monomial[0], "power": c.monomial[1]},
            "residual_exponent": c.residual_exponent,
            "terminal": c.terminal,
            "equation": {
                "variables": list(c.equation.variables),
                "terms": [list(t) for t in c.equation.terms],
            },
        }
        for c in charts
    ]
    payload = {
        "genus": config.genus,
        "p": config.prime,
        "coefficients": list(config.coeffs),
        "rounds": len(records),
        "charts": records,
    }
    fields = [
        "step",
        "variables",
        "monomial",
        "residual_exponent",
        "terminal",
        "equation",
    ]
    return payload, "charts", fields, EXIT_OK


_COMMANDS = {
    "factor": _cmd_factor,
    "torsion": _cmd_torsion,
    "verify": _cmd_verify,
    "spl": _cmd_spl,
    "density": _cmd_density,
    "include": _cmd_include,
    "frobenius": _cmd_frobenius,
    "blowup": _cmd_blowup,
}

RECORDS_KEY = {
    "factor": "factors",
    "torsion": "elements",
    "verify": "records",
    "spl": "primes",
    "density": "records",
    "include": "exceptions",
    "frobenius": "records",
    "blowup": "charts",
}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _envelope(config: RunConfig, payload: dict, exit_status: int) -> dict:
    stamp = None
    if config.stamp:
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    echo = asdict(config)
    # workers and output affect scheduling and destination, never content;
    # dropping them keeps equal-config reports byte-identical across widths
    del echo["workers"]
    del echo["output"]
    return {
        "tool": "splitlaw",
        "version": __version__,
        "command": config.command,
        "config": echo,
        "generated_at": stamp,
        "payload": payload,
        "exit_status": exit_status,
    }


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _render_csv(records: list[dict], fieldnames: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for record in records:
        writer.writerow([_cell(record.get(name)) for name in fieldnames])
    return buf.getvalue()


def _render_text(config: RunConfig, payload: dict, exit_status: int) -> str:
    lines = [f"splitlaw {config.command}"]
    skip = {RECORDS_KEY[config.command], "violations"}
    for key, value in payload.items():
        if key in skip:
            continue
        lines.append(f"  {key}: {_cell(value)}")
    records = payload[RECORDS_KEY[config.command]]
    lines.append(f"  {RECORDS_KEY[config.command]}: {len(records)}")
    if config.command == "verify" and payload["violations"]:
        lines.append("  VIOLATIONS:")
        for r in payload["violations"]:
            lines.append(f"    {_cell(r)}")
    lines.append(f"  exit: {exit_status}")
    return "\n".join(lines) + "\n"


def _write(config: RunConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    """Execute one subcommand and write its report; returns the exit code."""
    try:
        if config.bound is not None and config.bound < 2:
            raise SplitlawError("bound must be >= 2")
        for text in config.polynomials:
            f = parse_polynomial(text)
            if not f.is_monic:
                print(
                    f"warning: {text!r} is not monic (leading coefficient "
                    f"{f.coeffs[-1] if f.coeffs else 0})",
                    file=sys.stderr,
                )
        payload, records_key, fieldnames, status = _COMMANDS[config.command](config)
    except PolynomialSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SplitlawError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if config.fmt == "json":
        envelope = _envelope(config, payload, status)
        _write(config, json.dumps(envelope, sort_keys=True, indent=2) + "\n")
    elif config.fmt == "csv":
        _write(config, _render_csv(payload[records_key], fieldnames))
    else:
        _write(config, _render_text(config, payload, status))
    return status


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for law violations
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(
                f"warning: ignoring non-integer {SEED_ENV_VAR}={env!r}",
                file=sys.stderr,
            )
    return DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="splitlaw",
        description=(
            "Empirically verify that an odd-degree polynomial splits "
            "completely mod p exactly when the 2-torsion of the Jacobian "
            "of y^2 = f(x) over F_p has full rank."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument(
            "--seed", type=int, default=_default_seed(),
            help=f"PRNG seed (default {DEFAULT_SEED}; env {SEED_ENV_VAR})",
        )
        sp.add_argument(
            "--format", dest="fmt", choices=("json", "csv", "text"),
            default="json", help="output format (default json)",
        )
        sp.add_argument("-o", "--output", help="write the report to a file")
        sp.add_argument(
            "--stamp", action="store_true",
            help="include a wall-clock timestamp (breaks byte-reproducibility)",
        )
        sp.add_argument(
            "--ext-cap", type=int, default=ff.DEFAULT_EXT_CAP,
            help="largest allowed splitting-field degree",
        )
        sp.add_argument(
            "--enum-cap", type=int, default=jacobian.DEFAULT_ENUM_CAP,
            help="largest allowed brute-force enumeration size",
        )

    sp = sub.add_parser("factor", help="splitting type of f mod p")
    sp.add_argument("polynomial")
    sp.add_argument("-p", "--prime", type=int, required=True)
    common(sp)

    sp = sub.add_parser("torsion", help="rational 2-torsion subgroup mod p")
    sp.add_argument("polynomial")
    sp.add_argument("-p", "--prime", type=int, required=True)
    common(sp)

    sp = sub.add_parser("verify", help="verify the law over good primes <= bound")
    sp.add_argument("polynomial")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)

    sp = sub.add_parser("spl", help="completely-split primes <= bound")
    sp.add_argument("polynomial")
    sp.add_argument("--bound", type=int, required=True)
    common(sp)

    sp = sub.add_parser("density", help="observed split-prime frequency")
    sp.add_argument("polynomial")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--group-order", type=int, default=None)
    common(sp)

    sp = sub.add_parser("include", help="test Spl(f) within Spl(h) empirically")
    sp.add_argument("f")
    sp.add_argument("h")
    sp.add_argument("--bound", type=int, required=True)
    common(sp)

    sp = sub.add_parser("frobenius", help="Frobenius matrices over good primes")
    sp.add_argument("polynomial")
    sp.add_argument("--bound", type=int, required=True)
    common(sp)

    sp = sub.add_parser("blowup", help="blow-up chain at the point at infinity")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--coeffs", required=True, help="a_1,...,a_(2g+1) comma-separated")
    sp.add_argument("-p", "--prime", type=int, required=True)
    common(sp)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    polys: tuple[str, ...] = ()
    if hasattr(args, "polynomial"):
        polys = (args.polynomial,)
    elif hasattr(args, "f"):
        polys = (args.f, args.h)
    coeffs = None
    if getattr(args, "coeffs", None) is not None:
        try:
            coeffs = tuple(int(c.strip()) for c in args.coeffs.split(","))
        except ValueError:
            raise PolynomialSyntaxError(
                "coefficients must be a comma-separated integer list", position=0
            ) from None
    return RunConfig(
        command=args.command,
        polynomials=polys,
        prime=getattr(args, "prime", None),
        bound=getattr(args, "bound", None),
        seed=args.seed,
        fmt=args.fmt,
        output=args.output,
        workers=getattr(args, "workers", 1),
        ext_cap=args.ext_cap,
        enum_cap=args.enum_cap,
        group_order=getattr(args, "group_order", None),
        genus=getattr(args, "genus", None),
        coeffs=coeffs,
        stamp=args.stamp,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except PolynomialSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
