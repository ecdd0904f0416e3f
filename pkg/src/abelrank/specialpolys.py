"""Fixed polynomial families and the x <-> s variable transform.

* ``eulerian(m)``: the Eulerian polynomial p_m, the numerator in
  ``sum_{r>=1} r^m t^r = t p_m(t) / (1-t)^(m+1)``.
* ``qpoly(n)``: the integer polynomial q_n with
  ``x^n + x^-n - 2 = iota(s * q_n(s))``.
* ``iota``: the ring embedding Z[s] -> Z[x, 1/x] sending s to 2 - x - 1/x,
  with explicit inverse ``iota_inv`` on symmetric Laurent polynomials.
* ``adams_scale_laurent``: degree scaling x^k -> x^(n*k).
* ``st_graded``: the graded symmetric-power series
  ``prod_n (1 - x^n t)^(-a_n)`` expanded to a given t-order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import SymLaurent, UniPoly, binomial


@lru_cache(maxsize=None)
def _eulerian_row(m: int) -> tuple[int, ...]:
    # Triangle recurrence A(m, k) = (k+1) A(m-1, k) + (m-k) A(m-1, k-1).
    if m == 1:
        return (1,)
    prev = _eulerian_row(m - 1)
    row = []
    for k in range(m):
        a = (k + 1) * prev[k] if k < len(prev) else 0
        b = (m - k) * prev[k - 1] if k >= 1 else 0
        row.append(a + b)
    return tuple(row)


def eulerian(m: int) -> UniPoly:
    """Eulerian polynomial p_m in t; monic of degree m-1, palindromic."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return UniPoly(_eulerian_row(m), "t")


@lru_cache(maxsize=None)
def qpoly(n: int) -> UniPoly:
    """The degree n-1 integer polynomial q_n in s.

    Closed form: q_n(s) = -sum_{e=1..n} C(n+e, n-e) * 2n/(n+e) * (-s)^(e-1).
    The rational factor 2n/(n+e) always combines to an integer; this is
    asserted at construction.  Defining property:
    iota(s * q_n(s)) = x^n + x^-n - 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = []
    for e in range(1, n + 1):
        c = -Fraction(math.comb(n + e, n - e)) * Fraction(2 * n, n + e)
        c *= (-1) ** (e - 1)
        assert c.denominator == 1
        coeffs.append(c)
    return UniPoly(coeffs, "s")


def iota(h: UniPoly) -> SymLaurent:
    """Evaluate an s-polynomial at s = 2 - x - 1/x, exactly."""
    if h.var != "s":
        raise ValueError("iota expects a polynomial in s")
    s_image = SymLaurent({0: 2, 1: -1})
    acc = SymLaurent()
    for c in reversed(tuple(h)):
        acc = acc * s_image + c
    return acc


def iota_inv(b: SymLaurent) -> UniPoly:
    """Inverse of iota on symmetric Laurent polynomials.

    Writing b = a_0 + sum_{n>0} a_n (x^n + x^-n), the preimage is
    b(1) + sum_{n>0} a_n * s * q_n(s); no linear solve is needed.
    """
    acc = UniPoly((b.value_at_one(),), "s")
    for n, a in b.items():
        if n == 0:
            continue
        acc = acc + qpoly(n).shifted(1) * a
    return acc


def adams_scale_laurent(b: SymLaurent, n: int) -> SymLaurent:
    """Move the degree-k entry to degree n*k (i.e. x -> x^n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return SymLaurent({n * k: a for k, a in b.items()})


def st_graded(b: SymLaurent, order: int) -> list[SymLaurent]:
    """Coefficients of t^0 .. t^order of prod_n (1 - x^n t)^(-a_n).

    The product runs over the full support of b (degree 0 and both signs of
    each positive degree); exponents must be integers.  Each coefficient is
    again symmetric in x -> 1/x.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    series: list[dict[int, Fraction]] = [{0: Fraction(1)}] + [
        {} for _ in range(order)
    ]
    for n, a in b.items():
        if a.denominator != 1:
            raise ValueError(f"non-integer exponent a_{n} = {a}")
        exps = [(0, int(a))] if n == 0 else [(n, int(a)), (-n, int(a))]
        for m, e in exps:
            factor = _single_factor(m, e, order)
            series = _mul_tseries(series, factor, order)
    return [_fold_symmetric(coeff) for coeff in series]


def _single_factor(m: int, a: int, order: int) -> list[dict[int, Fraction]]:
    # (1 - x^m t)^(-a) as a t-series of Laurent monomials.
    out: list[dict[int, Fraction]] = []
    for j in range(order + 1):
        c = Fraction((-1) ** j * binomial(-a, j))
        out.append({m * j: c} if c != 0 else {})
    return out


def _mul_tseries(
    a: list[dict[int, Fraction]],
    b: list[dict[int, Fraction]],
    order: int,
) -> list[dict[int, Fraction]]:
    out: list[dict[int, Fraction]] = [{} for _ in range(order + 1)]
    for i, da in enumerate(a):
        if not da:
            continue
        for j in range(order + 1 - i):
            db = b[j]
            if not db:
                continue
            target = out[i + j]
            for ka, va in da.items():
                for kb, vb in db.items():
                    key = ka + kb
                    val = target.get(key, Fraction(0)) + va * vb
                    if val == 0:
                        target.pop(key, None)
                    else:
                        target[key] = val
    return out


def _fold_symmetric(full: dict[int, Fraction]) -> SymLaurent:
    data = {}
    for k, v in full.items():
        if k < 0:
            continue
        data[k] = v
    for k, v in full.items():
        if k > 0 and full.get(-k, Fraction(0)) != v:
            raise ValueError("series coefficient is not symmetric in x -> 1/x")
        if k < 0 and v != 0 and -k not in data:
            raise ValueError("series coefficient is not symmetric in x -> 1/x")
    return SymLaurent(data)
