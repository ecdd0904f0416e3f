"""Request/response models and handlers shared by the HTTP service and CLI.

Every command is a pydantic request model resolved to one or more validated
descriptors, run through the engine, and rendered as a deterministic
document: rationals as strings, polynomials as ascending coefficient
arrays, fixed field order.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import engine
from .errors import DescriptorInvalidError, InputParseError
from .exact import UniPoly, format_rational
from .model import (
    SheafDescriptor,
    descriptor_from_doc,
    descriptor_to_doc,
    preset_elliptic,
    preset_prym,
    preset_theta,
    random_descriptor,
    validate,
)
from .symgroup import Partition

MAX_ORDER_ENV = "ABELRANK_MAX_ORDER"
DEFAULT_MAX_ORDER = 64


def max_order() -> int:
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise InputParseError(
            f"{MAX_ORDER_ENV} must be an integer, got {raw!r}"
        ) from None


def _check_order(order: int):
    cap = max_order()
    if not 0 <= order <= cap:
        raise InputParseError(f"order must be in 0..{cap}, got {order}")


# ---------------------------------------------------------------------------
# Requests


class PresetParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Literal["theta", "prym", "elliptic"]
    g: Optional[int] = None
    m: Optional[int] = None
    chi: Optional[int] = None
    r: Optional[int] = None


class DescriptorDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    g: int
    chi: str
    gamma: list[str]
    spectrum: list[list[str]] = Field(default_factory=list)


class SweepParams(BaseModel):
    """Parameter grid for a preset family; ranges are inclusive."""

    model_config = ConfigDict(extra="forbid")

    g: Optional[tuple[int, int]] = None
    m: Optional[tuple[int, int]] = None
    r: Optional[tuple[int, int]] = None
    chi: Optional[tuple[int, int]] = None


class RandomParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    count: int = Field(ge=1, le=1000)
    seed: int = 0
    g_max: int = Field(default=5, ge=1, le=8)


class _SourceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[PresetParams] = None
    descriptor: Optional[DescriptorDoc] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.preset is None) == (self.descriptor is None):
            raise ValueError("exactly one of 'preset' or 'descriptor' required")
        return self


class SeriesRequest(_SourceRequest):
    kind: Literal["conv", "sym"]
    order: int = 8


class SchurRequest(_SourceRequest):
    alpha: Optional[list[int]] = None
    all_degree: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _alpha_or_table(self):
        if (self.alpha is None) == (self.all_degree is None):
            raise ValueError("exactly one of 'alpha' or 'all_degree' required")
        return self


class TraceRequest(_SourceRequest):
    sigma: list[int]


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[PresetParams] = None
    descriptor: Optional[DescriptorDoc] = None
    sweep: Optional[SweepParams] = None
    random: Optional[RandomParams] = None
    suites: list[str] = Field(default_factory=lambda: list(engine.SUITES))
    n_max: int = 5

    @model_validator(mode="after")
    def _exactly_one_source(self):
        sources = sum(
            x is not None for x in (self.preset, self.descriptor, self.random)
        )
        if sources != 1:
            raise ValueError(
                "exactly one of 'preset', 'descriptor' or 'random' required"
            )
        if self.sweep is not None and self.preset is None:
            raise ValueError("'sweep' requires a 'preset' family")
        return self


class PresetRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: PresetParams


# ---------------------------------------------------------------------------
# Responses


class PoleDoc(BaseModel):
    base: str
    order: int


class SeriesResponse(BaseModel):
    descriptor: DescriptorDoc
    kind: Literal["conv", "sym"]
    f_star: Optional[list[str]] = None
    f_bullet: Optional[list[str]] = None
    f: Optional[list[str]] = None
    f_tilde_star: Optional[list[str]] = None
    f_tilde_bullet: Optional[list[str]] = None
    f_tilde: Optional[list[str]] = None
    pole: PoleDoc
    coefficients: list[str]


class SchurEntry(BaseModel):
    alpha: list[int]
    dim: int
    rank: str


class SchurSumDoc(BaseModel):
    weighted_sum: str
    rank_direct: str
    passed: bool = Field(serialization_alias="pass")


class SchurResponse(BaseModel):
    descriptor: DescriptorDoc
    alpha: Optional[list[int]] = None
    rank: Optional[str] = None
    schur_table: Optional[list[SchurEntry]] = None
    schur_sum: Optional[SchurSumDoc] = None


class TraceResponse(BaseModel):
    descriptor: DescriptorDoc
    sigma: list[int]
    c_star: str
    c_bullet: str
    c: str


class CheckDoc(BaseModel):
    name: str
    passed: bool = Field(serialization_alias="pass")
    witness: Optional[dict] = None


class VerifyTargetDoc(BaseModel):
    label: str
    descriptor: DescriptorDoc
    checks: list[CheckDoc]


class VerifyResponse(BaseModel):
    targets: list[VerifyTargetDoc]
    checks: list[CheckDoc]
    passed: bool = Field(serialization_alias="pass")


# ---------------------------------------------------------------------------
# Source resolution


def build_preset(params: PresetParams) -> SheafDescriptor:
    def need(value, flag):
        if value is None:
            raise InputParseError(
                f"preset {params.name!r} requires parameter {flag!r}"
            )
        return value

    if params.name == "theta":
        return preset_theta(need(params.g, "g"))
    if params.name == "prym":
        return preset_prym(
            need(params.g, "g"), need(params.m, "m"), need(params.chi, "chi")
        )
    return preset_elliptic(need(params.r, "r"), need(params.chi, "chi"))


def _validated(d: SheafDescriptor) -> SheafDescriptor:
    report = validate(d)
    if not report.ok:
        raise DescriptorInvalidError(report)
    return d


def resolve_source(req: _SourceRequest) -> SheafDescriptor:
    if req.preset is not None:
        d = build_preset(req.preset)
    else:
        d = descriptor_from_doc(req.descriptor.model_dump())
    return _validated(d)


def _echo(d: SheafDescriptor) -> DescriptorDoc:
    return DescriptorDoc(**descriptor_to_doc(d))


def _poly_doc(p: UniPoly) -> list[str]:
    return p.coeff_strings(min_len=1)


def parse_partition_text(text: str) -> Partition:
    try:
        parts = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InputParseError(f"not a partition: {text!r}") from None
    return make_partition(parts)


def make_partition(parts: list[int]) -> Partition:
    try:
        return Partition(parts)
    except ValueError as e:
        raise InputParseError(str(e)) from None


# ---------------------------------------------------------------------------
# Handlers


def run_series(req: SeriesRequest) -> SeriesResponse:
    _check_order(req.order)
    d = resolve_source(req)
    series = engine.z_series(d, req.kind)
    coefficients = [format_rational(c) for c in series.expand(req.order)]
    pole = PoleDoc(
        base=format_rational(series.pole_base), order=series.pole_order
    )
    if req.kind == "conv":
        f = engine.f_polynomials(d)
        return SeriesResponse(
            descriptor=_echo(d),
            kind=req.kind,
            f_star=_poly_doc(f.star),
            f_bullet=_poly_doc(f.bullet),
            f=_poly_doc(f.combined),
            pole=pole,
            coefficients=coefficients,
        )
    ft = engine.ftilde_polynomials(d)
    return SeriesResponse(
        descriptor=_echo(d),
        kind=req.kind,
        f_tilde_star=_poly_doc(ft.star),
        f_tilde_bullet=_poly_doc(ft.bullet),
        f_tilde=_poly_doc(ft.combined),
        pole=pole,
        coefficients=coefficients,
    )


def run_schur(req: SchurRequest) -> SchurResponse:
    d = resolve_source(req)
    if req.alpha is not None:
        alpha = make_partition(req.alpha)
        rank = engine.schur_rank(d, alpha)
        return SchurResponse(
            descriptor=_echo(d), alpha=list(alpha), rank=format_rational(rank)
        )
    n = req.all_degree
    table = engine.schur_table(d, n)
    weighted = sum(dim * rank for _, dim, rank in table)
    direct = engine.r_star_direct(d, n) - engine.r_bullet_direct(d, n)
    return SchurResponse(
        descriptor=_echo(d),
        schur_table=[
            SchurEntry(alpha=list(a), dim=dim, rank=format_rational(rank))
            for a, dim, rank in table
        ],
        schur_sum=SchurSumDoc(
            weighted_sum=format_rational(weighted),
            rank_direct=format_rational(direct),
            passed=Fraction(weighted) == direct,
        ),
    )


def run_trace(req: TraceRequest) -> TraceResponse:
    d = resolve_source(req)
    sigma = make_partition(req.sigma)
    tv = engine.trace_values(d, sigma)
    return TraceResponse(
        descriptor=_echo(d),
        sigma=list(sigma),
        c_star=format_rational(tv.star),
        c_bullet=format_rational(tv.bullet),
        c=format_rational(tv.combined),
    )


def _verify_targets(req: VerifyRequest) -> list[tuple[str, SheafDescriptor]]:
    if req.random is not None:
        rng = random.Random(req.random.seed)
        out = []
        for i in range(req.random.count):
            d = random_descriptor(rng, rng.randint(1, req.random.g_max))
            out.append((f"random[{i}]", _validated(d)))
        return out
    if req.preset is not None and req.sweep is not None:
        return _sweep_targets(req.preset, req.sweep)
    if req.preset is not None:
        d = _validated(build_preset(req.preset))
        return [(_preset_label(req.preset), d)]
    d = _validated(descriptor_from_doc(req.descriptor.model_dump()))
    return [("descriptor", d)]


def _preset_label(p: PresetParams) -> str:
    args = [
        f"{key}={getattr(p, key)}"
        for key in ("g", "m", "chi", "r")
        if getattr(p, key) is not None
    ]
    return f"{p.name}({','.join(args)})"


def _sweep_targets(preset: PresetParams, sweep: SweepParams):
    def span(rng, fallback):
        if rng is None:
            return [fallback] if fallback is not None else [None]
        return list(range(rng[0], rng[1] + 1))

    out = []
    for g in span(sweep.g, preset.g):
        for m in span(sweep.m, preset.m):
            for r in span(sweep.r, preset.r):
                for chi in span(sweep.chi, preset.chi):
                    if preset.name == "prym" and chi is None and g is not None:
                        chi = 2 * g - 2
                    params = PresetParams(
                        name=preset.name, g=g, m=m, chi=chi, r=r
                    )
                    out.append(
                        (_preset_label(params), _validated(build_preset(params)))
                    )
    return out


def run_verify(req: VerifyRequest) -> VerifyResponse:
    _check_order(req.n_max)
    for name in req.suites:
        if name not in engine.SUITES:
            raise InputParseError(
                f"unknown suite {name!r}; choose from {', '.join(engine.SUITES)}"
            )
    resolved = _verify_targets(req)
    targets = []
    flat: list[CheckDoc] = []
    all_passed = True
    for label, d in resolved:
        checks = engine.verify(d, req.suites, n_max=req.n_max)
        all_passed &= all(c.passed for c in checks)
        docs = [
            CheckDoc(name=c.name, passed=c.passed, witness=c.witness)
            for c in checks
        ]
        targets.append(
            VerifyTargetDoc(label=label, descriptor=_echo(d), checks=docs)
        )
        if len(resolved) == 1:
            flat.extend(docs)
        else:
            flat.extend(
                CheckDoc(
                    name=f"{label}/{c.name}", passed=c.passed, witness=c.witness
                )
                for c in docs
            )
    return VerifyResponse(targets=targets, checks=flat, passed=all_passed)


def run_preset(req: PresetRequest) -> DescriptorDoc:
    """Emit the bare descriptor document, ready to feed back via --input."""
    return _echo(_validated(build_preset(req.preset)))
