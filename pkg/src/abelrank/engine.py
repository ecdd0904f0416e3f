"""Closed-form numerators, rational series, trace values and Schur ranks.

Every quantity is computed by a closed form and checkable against at least
one independent route; the verification suites assert those equalities.
Throughout, ``[p]_top`` denotes the coefficient of s^g evaluated against the
fundamental class (a factor g! on the class side, nothing on the spectrum
side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError
from .exact import (
    NEG_INF,
    BivarTrunc,
    RationalSeries,
    UniPoly,
    binomial,
    convolve_series,
    geometric_expansion,
    trunc_binom_pow,
    trunc_exp,
)
from .model import SheafDescriptor
from .specialpolys import adams_scale_laurent, eulerian, iota_inv, qpoly, st_graded
from .symgroup import Partition, class_size, character, dimension, partitions_of


@dataclass(frozen=True)
class Numerators:
    """Star part, bullet part and their difference, ascending in t."""

    star: UniPoly
    bullet: UniPoly
    combined: UniPoly


@dataclass(frozen=True)
class TraceValues:
    star: Fraction
    bullet: Fraction
    combined: Fraction


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None


def _chi_int(d: SheafDescriptor) -> int:
    if d.chi.denominator != 1:
        raise ValueError(f"chi must be an integer, got {d.chi}")
    return int(d.chi)


def _bracket_top(p: UniPoly, g: int) -> Fraction:
    """Top evaluation of an aligned class polynomial: coeff of s^g times g!."""
    return p[g] * math.factorial(g)


def _pow_trunc(p: UniPoly, n: int, g: int) -> UniPoly:
    out = UniPoly.one(p.var)
    base = p.truncated(g)
    while n:
        if n & 1:
            out = (out * base).truncated(g)
        base = (base * base).truncated(g)
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# Convolution powers


def r_star_direct(d: SheafDescriptor, n: int) -> Fraction:
    """Generic-stalk count of the n-th power, class route: [gamma^n]_top."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _bracket_top(_pow_trunc(d.gamma.poly(), n, d.g), d.g)


def r_bullet_direct(d: SheafDescriptor, n: int) -> Fraction:
    """Negligible-part count: sum over the spectrum of the s^g slot of h^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for entry in d.spectrum:
        total += _pow_trunc(entry.h, n, d.g)[d.g]
    return total


def f_polynomials(d: SheafDescriptor) -> Numerators:
    """Numerators of the convolution generating series.

    f_star = sum_{n=1..g} [(gamma - chi)^n]_top * t^(n-1) * (1 - chi t)^(g-n)
    and the same shape with spectrum entries (plain s^g slot) for the bullet
    part.  deg <= g-1; the constant term is the generic rank.
    """
    g, chi = d.g, d.chi
    one_minus = UniPoly([1, -chi], "t")
    gamma_centered = d.gamma.poly() - chi

    def assemble(values: list[Fraction]) -> UniPoly:
        total = UniPoly.zero("t")
        for n in range(1, g + 1):
            a = values[n - 1]
            if a == 0:
                continue
            total = total + a * (one_minus ** (g - n)).shifted(n - 1)
        return total

    star = assemble(
        [_bracket_top(_pow_trunc(gamma_centered, n, g), g) for n in range(1, g + 1)]
    )
    bullet_values = [Fraction(0)] * g
    for entry in d.spectrum:
        centered = entry.h - chi
        for n in range(1, g + 1):
            bullet_values[n - 1] += _pow_trunc(centered, n, g)[g]
    bullet = assemble(bullet_values)
    return Numerators(star, bullet, star - bullet)


def z_series(d: SheafDescriptor, kind: str) -> RationalSeries:
    """The generating series as a rational function.

    conv: t * f(t) / (1 - chi t)^(g+1)
    sym:  t * f_tilde(t) / (1 - t)^(2g + chi), chi a non-negative integer.
    """
    if kind == "conv":
        return RationalSeries(
            f_polynomials(d).combined.shifted(1), d.chi, d.g + 1
        )
    if kind == "sym":
        chi = _chi_int(d)
        if chi < 0:
            raise ValueError("chi must be >= 0 for the symmetric series")
        return RationalSeries(
            ftilde_polynomials(d).combined.shifted(1), 1, 2 * d.g + chi
        )
    raise ValueError(f"unknown series kind: {kind!r}")


# ---------------------------------------------------------------------------
# Symmetric powers


def ftilde_polynomials(d: SheafDescriptor) -> Numerators:
    """Numerators of the symmetric-power generating series.

    Star part: the s^g slot of prod_{i=1..g} exp(c_i * t * p_{2i-1}(t) * s^i),
    top-evaluated and divided by t.  Bullet part, per spectrum entry: the s^g
    slot of prod_{n>0} (1 - q_n((1-t)^2 s) s t)^{nu_n}, divided by t.  Both
    have degree <= 2g-2 and palindromic coefficients.
    """
    g = d.g
    t = UniPoly.monomial(1, 1, "t")

    parts = [UniPoly.zero("t")]
    for i in range(1, g + 1):
        c = d.gamma.coeffs[i]
        parts.append(t * eulerian(2 * i - 1) * c if c != 0 else UniPoly.zero("t"))
    star_top = trunc_exp(BivarTrunc(parts, g))[g]
    star = (star_top * math.factorial(g)).shifted(-1)

    one_minus_t = UniPoly([1, -1], "t")
    bullet = UniPoly.zero("t")
    for entry in d.spectrum:
        prod = BivarTrunc.one(g)
        for n, nu_n in sorted(entry.nu().items()):
            if nu_n == 0:
                continue
            q = qpoly(n)
            factor_parts = [UniPoly.zero("t")] * (g + 1)
            for e in range(len(q.coeffs)):
                if e + 1 > g or q[e] == 0:
                    continue
                factor_parts[e + 1] = -q[e] * t * one_minus_t ** (2 * e)
            prod = prod * trunc_binom_pow(BivarTrunc(factor_parts, g), nu_n)
        bullet = bullet + prod[g].shifted(-1)
    return Numerators(star, bullet, star - bullet)


def sym_rank_series_adams(d: SheafDescriptor, order: int) -> list[Fraction]:
    """Star-part symmetric ranks by the Adams exponential route.

    Expands exp(sum_{r>=1} sum_{i>=1} c_i r^(2i) s^i t^r / r) exactly,
    multiplies by (1-t)^(-chi), and top-evaluates.  Independent of the
    Eulerian-polynomial closed form.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    g = d.g
    chi = _chi_int(d)
    parts = [UniPoly.zero("t")]
    for i in range(1, g + 1):
        c = d.gamma.coeffs[i]
        if c == 0:
            parts.append(UniPoly.zero("t"))
            continue
        # sum_{r=1..order} r^(2i) t^r / r, as an exact polynomial
        parts.append(
            UniPoly([0] + [c * r ** (2 * i - 1) for r in range(1, order + 1)], "t")
        )
    top = trunc_exp(BivarTrunc(parts, g))[g] * math.factorial(g)
    top_coeffs = [top[j] for j in range(order + 1)]
    return convolve_series(
        top_coeffs, geometric_expansion(1, chi, order), order
    )


def sym_rank_series_betti(d: SheafDescriptor, order: int) -> list[Fraction]:
    """Bullet-part symmetric ranks, computed by two routes and compared.

    Route A expands (1-t)^(-chi) * prod_{n>0} (1 - q_n(s) s t/(1-t)^2)^{nu_n}
    per spectrum entry; route B expands the graded symmetric-power product
    prod (1 - x^n t)^(-a_n) and pulls each t-coefficient back through the
    inverse variable transform.  Disagreement raises ConsistencyError.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    route_a = _betti_product_route(d, order)
    route_b = _betti_graded_route(d, order)
    for idx, (a, b) in enumerate(zip(route_a, route_b)):
        if a != b:
            raise ConsistencyError(
                f"symmetric bullet routes disagree at t^{idx}: "
                f"{a} (product form) vs {b} (graded form)"
            )
    return route_a


def _betti_product_route(d: SheafDescriptor, order: int) -> list[Fraction]:
    g = d.g
    chi = _chi_int(d)
    chi_series = geometric_expansion(1, chi, order)
    totals = [Fraction(0)] * (order + 1)
    for entry in d.spectrum:
        series = [UniPoly.one("s")] + [UniPoly.zero("s")] * order
        for n, nu_n in sorted(entry.nu().items()):
            if nu_n == 0:
                continue
            factor = _betti_factor(n, nu_n, g, order)
            series = _mul_stseries(series, factor, g, order)
        for j in range(order + 1):
            coeff = Fraction(0)
            for i in range(j + 1):
                coeff += series[i][g] * chi_series[j - i]
            totals[j] += coeff
    return totals


def _betti_factor(n: int, nu_n: int, g: int, order: int) -> list[UniPoly]:
    # (1 - q_n(s) s t / (1-t)^2)^{nu_n} as a t-series with s-coefficients.
    out = [UniPoly.zero("s")] * (order + 1)
    q = qpoly(n)
    for k in range(g + 1):
        coeff = binomial(nu_n, k) * (-1) ** k
        if coeff == 0:
            continue
        s_part = ((q ** k).shifted(k)).truncated(g) * coeff
        if k == 0:
            out[0] = out[0] + s_part
            continue
        if s_part.is_zero():
            continue
        for j in range(k, order + 1):
            # t^k / (1-t)^(2k): coefficient of t^j is C(j+k-1, 2k-1)
            out[j] = out[j] + s_part * math.comb(j + k - 1, 2 * k - 1)
    return out


def _betti_graded_route(d: SheafDescriptor, order: int) -> list[Fraction]:
    totals = [Fraction(0)] * (order + 1)
    for entry in d.spectrum:
        for j, coeff in enumerate(st_graded(entry.laurent(), order)):
            totals[j] += iota_inv(coeff)[d.g]
    return totals


def _mul_stseries(a, b, g: int, order: int):
    out = [UniPoly.zero("s")] * (order + 1)
    for i, p in enumerate(a):
        if p.is_zero():
            continue
        for j in range(order + 1 - i):
            qq = b[j]
            if not qq.is_zero():
                out[i + j] = out[i + j] + (p * qq).truncated(g)
    return out


# ---------------------------------------------------------------------------
# Trace values and Schur ranks


def trace_values(d: SheafDescriptor, sigma: Partition) -> TraceValues:
    """Trace of a permutation of the given cycle type on the n-th power.

    Star part: [prod_r adams(gamma, sigma_r)]_top.  Bullet part: the s^g
    slot of the inverse transform of prod_r (x -> x^sigma_r applied to the
    spectrum entry's Laurent form), summed over the spectrum.
    """
    if sigma.degree < 1:
        raise ValueError("sigma must be a nonempty partition")
    g = d.g
    star_poly = UniPoly.one("s")
    for r in sigma:
        star_poly = (star_poly * d.gamma.adams(r).poly()).truncated(g)
    star = _bracket_top(star_poly, g)
    bullet = Fraction(0)
    for entry in d.spectrum:
        b = entry.laurent()
        prod = None
        for r in sigma:
            scaled = adams_scale_laurent(b, r)
            prod = scaled if prod is None else prod * scaled
        bullet += iota_inv(prod)[g]
    return TraceValues(star, bullet, star - bullet)


def schur_rank(d: SheafDescriptor, alpha: Partition) -> int:
    """Generic rank of the Schur-functor image indexed by alpha.

    (1/n!) * sum over cycle types of class_size * character * trace.  The
    result is asserted to be an integer.
    """
    n = alpha.degree
    if n < 1:
        raise ValueError("alpha must be a nonempty partition")
    traces = {
        sigma: trace_values(d, sigma).combined for sigma in partitions_of(n)
    }
    return _schur_from_traces(alpha, traces)


def schur_table(d: SheafDescriptor, n: int) -> list[tuple[Partition, int, int]]:
    """(alpha, dim, rank) for every alpha of degree n, sharing trace values."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alphas = partitions_of(n)
    traces = {sigma: trace_values(d, sigma).combined for sigma in alphas}
    return [
        (alpha, dimension(alpha), _schur_from_traces(alpha, traces))
        for alpha in alphas
    ]


def _schur_from_traces(alpha: Partition, traces) -> int:
    n = alpha.degree
    total = Fraction(0)
    for sigma, value in traces.items():
        total += class_size(sigma) * character(alpha, sigma) * value
    rank = total / math.factorial(n)
    if rank.denominator != 1:
        raise ConsistencyError(
            f"Schur rank for {tuple(alpha)} is not an integer: {rank}"
        )
    return int(rank)


# ---------------------------------------------------------------------------
# Verification suites

SUITES = (
    "functional_eq",
    "schur_sum",
    "adams_routes",
    "degree_bounds",
    "closed_forms",
)


def verify(d: SheafDescriptor, suites, n_max: int = 5) -> list[CheckResult]:
    """Run the named identity suites; pass/fail per check, exact witnesses."""
    suite_list = list(suites)
    for name in suite_list:
        if name not in SUITES:
            raise ValueError(f"unknown verification suite: {name!r}")
    checks = []
    for name in suite_list:
        checks.extend(_SUITE_RUNNERS[name](d, n_max))
    return checks


def _eq_check(name: str, expected, actual) -> CheckResult:
    if expected == actual:
        return CheckResult(name, True)
    return CheckResult(
        name, False, {"expected": str(expected), "actual": str(actual)}
    )


def _suite_functional_eq(d: SheafDescriptor, n_max: int) -> list[CheckResult]:
    ft = ftilde_polynomials(d)
    out = []
    for label, poly in (
        ("star", ft.star),
        ("bullet", ft.bullet),
        ("combined", ft.combined),
    ):
        name = f"functional_eq/{label}"
        if poly.degree != NEG_INF and poly.degree > 2 * d.g - 2:
            out.append(
                CheckResult(name, False, {"degree": str(poly.degree)})
            )
            continue
        out.append(_eq_check(name, poly, poly.reversed_to(2 * d.g - 2)))
    return out


def _suite_degree_bounds(d: SheafDescriptor, n_max: int) -> list[CheckResult]:
    f = f_polynomials(d)
    ft = ftilde_polynomials(d)
    rank = d.generic_rank()
    out = [
        _eq_check("degree_bounds/f_degree", True, f.combined.degree <= d.g - 1),
        _eq_check(
            "degree_bounds/ftilde_degree",
            True,
            ft.combined.degree <= 2 * d.g - 2,
        ),
        _eq_check("degree_bounds/f_constant_term", rank, f.combined[0]),
        _eq_check("degree_bounds/ftilde_constant_term", rank, ft.combined[0]),
    ]
    if rank > 0:
        out.append(
            _eq_check(
                "degree_bounds/full_support_degree",
                2 * d.g - 2,
                ft.combined.degree,
            )
        )
    return out


def _suite_closed_forms(d: SheafDescriptor, n_max: int) -> list[CheckResult]:
    expansion = z_series(d, "conv").expand(n_max)
    out = [_eq_check("closed_forms/conv_no_constant", Fraction(0), expansion[0])]
    for n in range(1, n_max + 1):
        direct = r_star_direct(d, n) - r_bullet_direct(d, n)
        out.append(
            _eq_check(f"closed_forms/conv_rank_{n}", direct, expansion[n])
        )
    return out


def _suite_adams_routes(d: SheafDescriptor, n_max: int) -> list[CheckResult]:
    ft = ftilde_polynomials(d)
    chi = _chi_int(d)
    pole = 2 * d.g + chi
    out = []

    star_closed = RationalSeries(ft.star.shifted(1), 1, pole).expand(n_max)
    star_adams = sym_rank_series_adams(d, n_max)
    out.append(_eq_check("adams_routes/star", star_closed, star_adams))

    bullet_closed = RationalSeries(ft.bullet.shifted(1), 1, pole).expand(n_max)
    try:
        bullet_betti = sym_rank_series_betti(d, n_max)
    except ConsistencyError as e:
        out.append(CheckResult("adams_routes/bullet", False, {"error": str(e)}))
    else:
        out.append(_eq_check("adams_routes/bullet", bullet_closed, bullet_betti))

    for n in range(1, min(n_max, 5) + 1):
        tv = trace_values(d, Partition([1] * n))
        expected = (
            r_star_direct(d, n),
            r_bullet_direct(d, n),
            r_star_direct(d, n) - r_bullet_direct(d, n),
        )
        out.append(
            _eq_check(
                f"adams_routes/trace_identity_{n}",
                expected,
                (tv.star, tv.bullet, tv.combined),
            )
        )
    return out


def _suite_schur_sum(d: SheafDescriptor, n_max: int) -> list[CheckResult]:
    out = []
    for n in range(1, n_max + 1):
        try:
            weighted = sum(
                dim * rank for _, dim, rank in schur_table(d, n)
            )
        except ConsistencyError as e:
            out.append(
                CheckResult(f"schur_sum/n_{n}", False, {"error": str(e)})
            )
            continue
        direct = r_star_direct(d, n) - r_bullet_direct(d, n)
        out.append(_eq_check(f"schur_sum/n_{n}", direct, Fraction(weighted)))
    return out


_SUITE_RUNNERS = {
    "functional_eq": _suite_functional_eq,
    "schur_sum": _suite_schur_sum,
    "adams_routes": _suite_adams_routes,
    "degree_bounds": _suite_degree_bounds,
    "closed_forms": _suite_closed_forms,
}
