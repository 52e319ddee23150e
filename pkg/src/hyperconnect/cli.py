"""Command-line front end.

Subcommands: eval, expand, connect, verify, catalog.  Parameters are passed
as flags named after the family/theorem parameters; rational values use the
literal form p/q (decimals are rejected on the exact backend so decimal ->
rational coercion can never fake exactness).  Exit codes: 0 success or all
pass, 1 verification failure, 2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families, verify
from . import connection as conn
from .errors import DomainError, HyperconnectError
from .fields import EXACT, numeric, parse_rational

_PARAM_FLAGS = (
    "alpha", "beta", "c", "d", "gamma", "p", "q", "N", "M",
    "a", "b", "x", "theta", "t", "n", "m",
)
_INT_FLAGS = {"N", "M", "n", "m"}


def _add_common(parser: argparse.ArgumentParser, with_params: bool = True):
    parser.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    parser.add_argument("--output", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--output-path", default=None)
    if with_params:
        for flag in _PARAM_FLAGS:
            parser.add_argument(f"--{flag}", default=None)
        parser.add_argument(
            "--param", action="append", default=[], metavar="NAME=VALUE",
            help="extra parameter binding; may repeat",
        )


def _parse_value(text: str, backend: str):
    if backend == "exact":
        return parse_rational(text)
    try:
        return parse_rational(text)
    except DomainError:
        try:
            return complex(text)
        except ValueError:
            raise DomainError(f"cannot parse numeric value {text!r}") from None


def _collect_params(args, backend: str) -> dict:
    params = {}
    for flag in _PARAM_FLAGS:
        raw = getattr(args, flag, None)
        if raw is None:
            continue
        if flag in _INT_FLAGS:
            params[flag] = int(raw)
        else:
            params[flag] = _parse_value(raw, backend)
    for item in getattr(args, "param", []):
        if "=" not in item:
            raise DomainError(f"--param expects NAME=VALUE, got {item!r}")
        name, raw = item.split("=", 1)
        params[name.strip()] = _parse_value(raw.strip(), backend)
    return params


def _parse_bindings(text: str, backend: str) -> dict:
    out = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise DomainError(f"expected NAME=VALUE, got {piece!r}")
        name, raw = piece.split("=", 1)
        name = name.strip()
        value = _parse_value(raw.strip(), backend)
        if name in _INT_FLAGS:
            value = int(value)
        out[name] = value
    return out


def _emit(document: str, path):
    if path is None:
        sys.stdout.write(document)
        if not document.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(document)


def _field_for(backend: str):
    return EXACT if backend == "exact" else numeric()


def _serialize_scalar(value, field) -> str:
    if field.is_exact:
        return str(Fraction(value))
    v = complex(value)
    return repr(v.real) if v.imag == 0 else repr(v)


def _cmd_eval(args) -> int:
    params = _collect_params(args, args.backend)
    n = params.pop("n", None)
    if n is None:
        raise DomainError("eval needs --n (the degree)")
    x = params.pop("x", None)
    params.pop("m", None)
    value = families.family_eval(args.family, n, x, params)
    field = _field_for(args.backend)
    if args.output == "json":
        _emit(json.dumps({"value": field.serialize(value)}, indent=2), args.output_path)
    else:
        _emit(_serialize_scalar(value, field), args.output_path)
    return 0


def _cmd_expand(args) -> int:
    params = _collect_params(args, args.backend)
    x = params.pop("x", None)
    field = None if args.backend == "exact" else numeric()
    series = families.gf_expand(args.family, x, params, args.order, field)
    if args.output == "json":
        _emit(json.dumps(series.as_json(), indent=2), args.output_path)
    elif args.output == "csv":
        rows = [f"{j},{_serialize_scalar(c, series.field)}"
                for j, c in enumerate(series.coefficients)]
        _emit("\n".join(["order," + str(series.order)] + rows), args.output_path)
    else:
        _emit(repr(series), args.output_path)
    return 0


def _cmd_connect(args) -> int:
    backend = args.backend
    field = _field_for(backend)
    if args.relation:
        relation_id = args.relation
        if relation_id not in conn.relation_ids():
            prefixed = [r for r in conn.relation_ids() if r.endswith(relation_id)]
            if len(prefixed) == 1:
                relation_id = prefixed[0]
        spec = conn.get_relation(relation_id)
        params = _collect_params(args, backend)
        if args.method == "closed-form":
            table = conn.connection_table(relation_id, params, args.n_max, field)
        else:
            source, target = spec.source(params), spec.target(params)
            if args.method == "power-collection":
                table = conn.power_collect(spec.family, source, target, args.n_max)
            else:
                table = conn.connect_linear_solve(spec.family, source, target, args.n_max)
    else:
        if not (args.source and args.target and args.family):
            raise DomainError(
                "connect needs --relation, or --family with --source and --target"
            )
        source = _parse_bindings(args.source, backend)
        target = _parse_bindings(args.target, backend)
        if args.method == "linear-solve":
            table = conn.connect_linear_solve(args.family, source, target, args.n_max)
        else:
            table = conn.power_collect(args.family, source, target, args.n_max)
    if args.output == "json":
        _emit(json.dumps(table.as_json(), indent=2), args.output_path)
    elif args.output == "csv":
        _emit(table.to_csv(), args.output_path)
    else:
        if table.x_dependent:
            _emit(f"connection-type table ({table.relation}); coefficients take x",
                  args.output_path)
        else:
            lines = [
                " ".join(_serialize_scalar(c, table.field) for c in row)
                for row in table.matrix()
            ]
            _emit("\n".join(lines), args.output_path)
    return 0


def _status_line(report) -> str:
    bits = [f"{report.status.upper():12s} {report.case.identity}"]
    if report.deviation is not None:
        bits.append(f"deviation={report.deviation:.3e}")
    if report.first_failing_order is not None:
        bits.append(f"first_failing_order={report.first_failing_order}")
    if report.tail_bound not in (None, 0.0):
        bits.append(f"tail={report.tail_bound:.3e}")
    if report.detail:
        bits.append(report.detail)
    return "  ".join(bits)


def _cmd_verify(args) -> int:
    field = _field_for(args.backend)
    if args.suite:
        if args.suite != "acceptance":
            raise DomainError(f"unknown suite {args.suite!r}")
        cases = verify.acceptance_suite(order=args.order or 12)
    else:
        if not args.identity:
            raise DomainError("verify needs --suite or --identity")
        params = _collect_params(args, args.backend)
        if args.n_max is not None:
            params["n_max"] = args.n_max
        if args.x_samples:
            params["x_samples"] = tuple(
                _parse_value(v, args.backend) for v in args.x_samples.split(",")
            )
        cases = [verify.IdentityCase(
            args.identity, params, order=args.order, field=field,
            x_max=args.x_max,
        )]
    reports = verify.batch_verify(cases, threads=args.threads)
    summary = verify.summarize(reports)
    if args.output == "json":
        document = json.dumps(
            {"reports": [r.as_json() for r in reports], "summary": summary},
            indent=2,
        )
        _emit(document, args.output_path)
    else:
        lines = [_status_line(r) for r in reports]
        lines.append(
            f"summary: {summary['pass']}/{summary['total']} pass,"
            f" {summary['fail']} fail, {summary['error']} error,"
            f" {summary['inconclusive']} inconclusive"
        )
        _emit("\n".join(lines), args.output_path)
    if summary["fail"] or summary["error"]:
        return 1
    if summary["inconclusive"]:
        return 3
    return 0


def _cmd_catalog(args) -> int:
    doc = families.catalog_as_json()
    if args.family:
        matches = [f for f in doc["families"] if f["id"] == args.family]
        if not matches:
            raise DomainError(f"unknown family {args.family!r}")
        doc = matches[0]
    _emit(json.dumps(doc, indent=2), args.output_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperconnect",
        description="Connection relations and generating-function identities"
                    " for hypergeometric orthogonal polynomial families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one polynomial value")
    p_eval.add_argument("--family", required=True)
    _add_common(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_expand = sub.add_parser("expand", help="expand a generating function")
    p_expand.add_argument("--family", required=True)
    p_expand.add_argument("--order", type=int, required=True)
    _add_common(p_expand)
    p_expand.set_defaults(handler=_cmd_expand)

    p_conn = sub.add_parser("connect", help="derive a connection table")
    p_conn.add_argument("--relation", default=None)
    p_conn.add_argument("--family", default=None)
    p_conn.add_argument("--method",
                        choices=("closed-form", "power-collection", "linear-solve"),
                        default="closed-form")
    p_conn.add_argument("--n-max", type=int, required=True)
    p_conn.add_argument("--source", default=None, metavar="NAME=VALUE,...")
    p_conn.add_argument("--target", default=None, metavar="NAME=VALUE,...")
    _add_common(p_conn)
    p_conn.set_defaults(handler=_cmd_connect)

    p_verify = sub.add_parser("verify", help="verify identities")
    p_verify.add_argument("--suite", default=None)
    p_verify.add_argument("--identity", default=None)
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--x-samples", default=None,
                          metavar="X1,X2,...")
    p_verify.add_argument("--x-max", type=int, default=300)
    p_verify.add_argument("--threads", type=int, default=None)
    _add_common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_cat = sub.add_parser("catalog", help="print the family catalog")
    p_cat.add_argument("--family", default=None)
    _add_common(p_cat, with_params=False)
    p_cat.set_defaults(handler=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except HyperconnectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
