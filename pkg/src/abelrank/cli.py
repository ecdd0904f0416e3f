"""Command-line front end; a thin client over the service handlers.

Exit codes: 0 success, 1 verification failure, 2 descriptor validation
error, 3 parse/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import pydantic

from . import api
from .engine import SUITES
from .errors import (
    ConsistencyError,
    DescriptorInvalidError,
    InputParseError,
    SchemaError,
)
from .exact import UniPoly

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # Usage errors exit 3 per the CLI contract (argparse defaults to 2).
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: _Parser):
    p.add_argument(
        "--preset", choices=("theta", "prym", "elliptic"),
        help="built-in descriptor family",
    )
    p.add_argument("--g", type=int, help="dimension parameter")
    p.add_argument("--m", type=int, help="curve-class exponent (prym)")
    p.add_argument("--chi", type=int, help="Euler characteristic")
    p.add_argument("--r", type=int, help="generic rank (elliptic)")
    p.add_argument("--input", metavar="FILE", help="descriptor JSON file")


def _add_format(p: _Parser):
    p.add_argument(
        "--format", choices=("json", "text", "latex"), default="json",
        help="output rendering (default json)",
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="abelrank",
        description=(
            "Exact generating series, trace values and Schur-functor "
            "generic ranks for convolution powers on abelian varieties."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="generating-series numerators and coefficients")
    _add_source(p)
    p.add_argument("--kind", choices=("conv", "sym"), required=True)
    p.add_argument("--order", type=int, default=8, help="expansion order (default 8)")
    _add_format(p)

    p = sub.add_parser("schur", help="Schur-functor generic ranks")
    _add_source(p)
    p.add_argument("--alpha", help="partition, e.g. 2,1")
    p.add_argument(
        "--all", dest="all_degree", type=int, metavar="N",
        help="table over all partitions of N",
    )
    _add_format(p)

    p = sub.add_parser("trace", help="trace values for a cycle type")
    _add_source(p)
    p.add_argument("--sigma", required=True, help="cycle type, e.g. 2,1")
    _add_format(p)

    p = sub.add_parser("verify", help="run identity-verification suites")
    _add_source(p)
    p.add_argument(
        "--suite",
        help="comma-separated suite names (default: all suites)",
    )
    p.add_argument("--n-max", type=int, default=5, help="check depth (default 5)")
    p.add_argument("--sweep", help="preset parameter grid, e.g. g=2..6,m=1..3")
    p.add_argument("--random", dest="random_count", type=int, metavar="N",
                   help="verify N seeded random descriptors")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)

    p = sub.add_parser("preset", help="emit a preset descriptor document")
    p.add_argument(
        "--preset", choices=("theta", "prym", "elliptic"), required=True
    )
    p.add_argument("--g", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--chi", type=int)
    p.add_argument("--r", type=int)
    _add_format(p)

    return parser


def _preset_params(args) -> api.PresetParams | None:
    if args.preset is None:
        return None
    return api.PresetParams(
        name=args.preset, g=args.g, m=args.m, chi=args.chi, r=args.r
    )


def _descriptor_doc(args) -> api.DescriptorDoc | None:
    if getattr(args, "input", None) is None:
        return None
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputParseError(f"cannot read {args.input}: {e}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"malformed JSON in {args.input}: {e}") from None
    try:
        return api.DescriptorDoc.model_validate(raw)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        path = "$." + ".".join(str(x) for x in first["loc"])
        raise SchemaError(path, first["msg"]) from None


def _parse_sweep(text: str) -> api.SweepParams:
    out = {}
    for item in text.split(","):
        key, sep, rng = item.partition("=")
        key = key.strip()
        if not sep or key not in ("g", "m", "r", "chi"):
            raise InputParseError(f"bad sweep component: {item!r}")
        lo, dots, hi = rng.partition("..")
        try:
            low = int(lo)
            high = int(hi) if dots else low
        except ValueError:
            raise InputParseError(f"bad sweep range: {item!r}") from None
        out[key] = (low, high)
    return api.SweepParams(**out)


def _dispatch(args):
    source = {
        "preset": _preset_params(args),
        "descriptor": _descriptor_doc(args),
    }
    if args.command == "series":
        return api.run_series(
            api.SeriesRequest(kind=args.kind, order=args.order, **source)
        )
    if args.command == "schur":
        alpha = (
            list(api.parse_partition_text(args.alpha))
            if args.alpha is not None
            else None
        )
        return api.run_schur(
            api.SchurRequest(alpha=alpha, all_degree=args.all_degree, **source)
        )
    if args.command == "trace":
        sigma = list(api.parse_partition_text(args.sigma))
        return api.run_trace(api.TraceRequest(sigma=sigma, **source))
    if args.command == "verify":
        suites = (
            [s.strip() for s in args.suite.split(",") if s.strip()]
            if args.suite
            else list(SUITES)
        )
        random_params = (
            api.RandomParams(count=args.random_count, seed=args.seed)
            if args.random_count is not None
            else None
        )
        sweep = _parse_sweep(args.sweep) if args.sweep else None
        return api.run_verify(
            api.VerifyRequest(
                sweep=sweep,
                random=random_params,
                suites=suites,
                n_max=args.n_max,
                **source,
            )
        )
    return api.run_preset(api.PresetRequest(preset=_preset_params(args)))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        response = _dispatch(args)
    except InputParseError as e:
        print(f"abelrank: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        print(f"abelrank: usage error: {first['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as e:
        print(f"abelrank: schema violation: {e}", file=sys.stderr)
        return EXIT_INVALID
    except DescriptorInvalidError as e:
        print("abelrank: descriptor validation failed:", file=sys.stderr)
        for issue in e.report.issues:
            print(f"  [{issue.code}] {issue.path}: {issue.message}",
                  file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as e:
        print(f"abelrank: internal consistency failure: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(render(response, args.format))
    if isinstance(response, api.VerifyResponse) and not response.passed:
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# Rendering


def render(response: pydantic.BaseModel, fmt: str) -> str:
    doc = response.model_dump(exclude_none=True, by_alias=True)
    if fmt == "json":
        return json.dumps(doc, indent=2)
    if fmt == "latex":
        return _render_fields(doc, latex=True)
    return _render_fields(doc, latex=False)


_POLY_FIELDS = (
    "f_star", "f_bullet", "f",
    "f_tilde_star", "f_tilde_bullet", "f_tilde",
)


def _poly_str(coeffs: list[str], latex: bool) -> str:
    p = UniPoly([Fraction(c) for c in coeffs], "t")
    if not latex:
        return str(p)
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        number = (
            str(mag) if mag.denominator == 1
            else rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
        )
        if k == 0:
            body = number
        else:
            term = "t" if k == 1 else f"t^{{{k}}}"
            body = term if mag == 1 else f"{number} {term}"
        parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
    return " ".join(parts)


def _descriptor_line(d: dict) -> str:
    return (
        f"descriptor: g={d['g']} chi={d['chi']} gamma=[{', '.join(d['gamma'])}] "
        f"spectrum={len(d['spectrum'])} entries"
    )


def _render_fields(doc: dict, latex: bool) -> str:
    lines = []
    if doc.get("descriptor") is not None:
        lines.append(_descriptor_line(doc["descriptor"]))
    elif {"g", "chi", "gamma"} <= doc.keys():
        # bare descriptor document (the preset command)
        lines.append(_descriptor_line(doc))
    for key in _POLY_FIELDS:
        if key in doc:
            lines.append(f"{key} = {_poly_str(doc[key], latex)}")
    if "pole" in doc:
        base, order = doc["pole"]["base"], doc["pole"]["order"]
        scale = "" if base == "1" else (f"{base} " if latex else f"{base}*")
        denom = (
            rf"(1 - {scale}t)^{{{order}}}" if latex
            else f"(1 - {scale}t)^{order}"
        )
        lines.append(f"pole = {denom}")
    if "coefficients" in doc:
        lines.append("coefficients = [" + ", ".join(doc["coefficients"]) + "]")
    if "alpha" in doc and "rank" in doc:
        alpha = ",".join(str(x) for x in doc["alpha"])
        lines.append(f"rank({alpha}) = {doc['rank']}")
    if "schur_table" in doc:
        for row in doc["schur_table"]:
            alpha = ",".join(str(x) for x in row["alpha"])
            lines.append(f"alpha=({alpha}) dim={row['dim']} rank={row['rank']}")
        check = doc.get("schur_sum")
        if check:
            lines.append(
                f"schur sum = {check['weighted_sum']} "
                f"(direct rank {check['rank_direct']}, "
                f"{'ok' if check['pass'] else 'MISMATCH'})"
            )
    if "sigma" in doc and "c" in doc:
        sigma = ",".join(str(x) for x in doc["sigma"])
        lines.append(
            f"trace({sigma}): c_star={doc['c_star']} "
            f"c_bullet={doc['c_bullet']} c={doc['c']}"
        )
    if "targets" in doc:
        for target in doc["targets"]:
            for check in target["checks"]:
                status = "PASS" if check["pass"] else "FAIL"
                lines.append(f"{status} {target['label']} {check['name']}")
                if not check["pass"] and check.get("witness"):
                    lines.append(f"      witness: {check['witness']}")
        lines.append("all checks passed" if doc["pass"] else "CHECKS FAILED")
    if not lines:
        lines.append(json.dumps(doc, indent=2))
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
