"""Exact arithmetic substrate.

Everything downstream is built on four value types:

* :class:`UniPoly` -- dense univariate polynomials over ``Fraction`` with a
  variable tag (``t`` or ``s``),
* :class:`SymLaurent` -- Laurent polynomials in ``x`` that are symmetric
  under ``x -> 1/x``, stored as ``a_0 + sum_{n>0} a_n (x^n + x^-n)``,
* :class:`BivarTrunc` -- polynomials in ``s`` with ``UniPoly``-in-``t``
  coefficients, truncated above a fixed ``s``-degree,
* :class:`RationalSeries` -- ``numerator(t) / (1 - c*t)^k`` with exact
  expansion to any order.

No floating point is used anywhere; all arithmetic is exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

#: Degree of the zero polynomial.  A distinguished sentinel (and absorbing
#: element under max/+), never an ordinary integer.
NEG_INF = float("-inf")

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a decimal-integer string or a ``"p/q"`` string exactly."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value: Scalar) -> str:
    """Canonical string form: ``"24"`` or ``"1/6"``."""
    return str(Fraction(value))


def binomial(a: int, k: int) -> int:
    """Generalized binomial coefficient C(a, k) for integer a (possibly < 0)."""
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    return (-1) ** k * math.comb(k - a - 1, k)


class UniPoly:
    """Dense univariate polynomial, coefficients ascending by degree.

    Immutable; trailing zero coefficients are stripped on construction.  The
    variable tag is metadata only, but mixing tags in arithmetic is an error.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "t"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls, var: str = "t") -> UniPoly:
        return cls((), var)

    @classmethod
    def one(cls, var: str = "t") -> UniPoly:
        return cls((1,), var)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1, var: str = "t") -> UniPoly:
        return cls([0] * degree + [coeff], var)

    @property
    def degree(self):
        """Degree, or :data:`NEG_INF` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == (() if other == 0 else (Fraction(other),))
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.var != self.var:
                raise ValueError(
                    f"variable mismatch: {self.var!r} vs {other.var!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,), self.var)
        return NotImplemented

    def __neg__(self) -> UniPoly:
        return UniPoly((-c for c in self.coeffs), self.var)

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly((self[k] + other[k] for k in range(n)), self.var)

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return -(self - other)

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, (int, Fraction)):
            return UniPoly((c * other for c in self.coeffs), self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncated(self, max_degree: int) -> UniPoly:
        """Drop all terms of degree above ``max_degree``."""
        return UniPoly(self.coeffs[: max_degree + 1], self.var)

    def shifted(self, k: int) -> UniPoly:
        """Multiply by var**k; for k < 0 the low coefficients must vanish."""
        if k >= 0:
            return UniPoly((0,) * k + self.coeffs, self.var)
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError(f"not divisible by {self.var}^{-k}")
        return UniPoly(self.coeffs[-k:], self.var)

    def reversed_to(self, n: int) -> UniPoly:
        """Coefficient reversal var^n * p(1/var); requires degree <= n."""
        if len(self.coeffs) > n + 1:
            raise ValueError(f"degree exceeds {n}")
        padded = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return UniPoly(reversed(padded), self.var)

    def coeff_strings(self, min_len: int = 0) -> list[str]:
        """Ascending coefficients as canonical rational strings."""
        cs = [format_rational(c) for c in self.coeffs]
        cs.extend("0" for _ in range(min_len - len(cs)))
        return cs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                term = self.var if k == 1 else f"{self.var}^{k}"
                body = term if mag == 1 else f"{mag}*{term}"
            parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"


class SymLaurent:
    """Symmetric Laurent polynomial ``a_0 + sum_{n>0} a_n (x^n + x^-n)``.

    Only non-negative degrees are stored; asymmetric data is unrepresentable
    by construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Scalar] = ()):
        data = {}
        for n, a in dict(coeffs).items():
            if n < 0:
                raise ValueError("SymLaurent keys are non-negative degrees")
            a = Fraction(a)
            if a != 0:
                data[int(n)] = a
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("SymLaurent is immutable")

    @classmethod
    def constant(cls, a: Scalar) -> SymLaurent:
        return cls({0: a})

    @classmethod
    def pair(cls, n: int, a: Scalar = 1) -> SymLaurent:
        """The element a*(x^n + x^-n) for n > 0, or the constant 2a for n = 0."""
        if n == 0:
            return cls({0: 2 * Fraction(a)})
        return cls({n: a})

    def get(self, n: int) -> Fraction:
        return self.coeffs.get(abs(n), Fraction(0))

    def items(self):
        return sorted(self.coeffs.items())

    @property
    def breadth(self) -> int:
        """Largest stored degree (0 for constants and for zero)."""
        return max(self.coeffs, default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def value_at_one(self) -> Fraction:
        """Evaluate at x = 1, i.e. ``a_0 + 2*sum_{n>0} a_n``."""
        return sum(
            (a if n == 0 else 2 * a for n, a in self.coeffs.items()),
            Fraction(0),
        )

    def _full(self) -> dict[int, Fraction]:
        out = {}
        for n, a in self.coeffs.items():
            out[n] = a
            if n > 0:
                out[-n] = a
        return out

    @classmethod
    def _from_full(cls, full: Mapping[int, Fraction]) -> SymLaurent:
        data = {}
        for n, a in full.items():
            if a == 0:
                continue
            if n < 0:
                continue
            data[n] = a
        for n in data:
            if n > 0 and full.get(-n, Fraction(0)) != data[n]:
                raise ValueError("product lost x -> 1/x symmetry")
        for n, a in full.items():
            if n < 0 and a != 0 and -n not in data:
                raise ValueError("product lost x -> 1/x symmetry")
        return cls(data)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymLaurent):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({} if other == 0 else {0: Fraction(other)})
        return NotImplemented

    def __neg__(self) -> SymLaurent:
        return SymLaurent({n: -a for n, a in self.coeffs.items()})

    def __add__(self, other) -> SymLaurent:
        if isinstance(other, (int, Fraction)):
            other = SymLaurent.constant(other)
        if not isinstance(other, SymLaurent):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return SymLaurent({n: self.get(n) + other.get(n) for n in keys})

    __radd__ = __add__

    def __sub__(self, other) -> SymLaurent:
        if isinstance(other, (int, Fraction)):
            other = SymLaurent.constant(other)
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> SymLaurent:
        return -(self - other)

    def __mul__(self, other) -> SymLaurent:
        if isinstance(other, (int, Fraction)):
            return SymLaurent(
                {n: a * other for n, a in self.coeffs.items()}
            )
        if not isinstance(other, SymLaurent):
            return NotImplemented
        full = {}
        for m, a in self._full().items():
            for n, b in other._full().items():
                key = m + n
                full[key] = full.get(key, Fraction(0)) + a * b
        return SymLaurent._from_full(full)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SymLaurent:
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = SymLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"SymLaurent({dict(self.items())!r})"


class BivarTrunc:
    """Polynomial in ``s`` with exact ``UniPoly``-in-``t`` coefficients,
    truncated above ``s^order``.

    The ``t`` side is never truncated: in every use the ``t``-degree is
    bounded, so values stay exact polynomials.
    """

    __slots__ = ("parts", "order")

    def __init__(self, parts: Iterable[UniPoly], order: int):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        ps = list(parts)
        if len(ps) > order + 1:
            ps = ps[: order + 1]
        while len(ps) < order + 1:
            ps.append(UniPoly.zero("t"))
        for p in ps:
            if p.var != "t":
                raise ValueError("BivarTrunc coefficients must be in t")
        object.__setattr__(self, "parts", tuple(ps))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("BivarTrunc is immutable")

    @classmethod
    def zero(cls, order: int) -> BivarTrunc:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> BivarTrunc:
        return cls((UniPoly.one("t"),), order)

    def __getitem__(self, i: int) -> UniPoly:
        return self.parts[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarTrunc):
            return NotImplemented
        return self.order == other.order and self.parts == other.parts

    def _check(self, other: BivarTrunc):
        if not isinstance(other, BivarTrunc):
            raise TypeError("expected BivarTrunc")
        if other.order != self.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other: BivarTrunc) -> BivarTrunc:
        self._check(other)
        return BivarTrunc(
            (a + b for a, b in zip(self.parts, other.parts)), self.order
        )

    def __sub__(self, other: BivarTrunc) -> BivarTrunc:
        self._check(other)
        return BivarTrunc(
            (a - b for a, b in zip(self.parts, other.parts)), self.order
        )

    def __mul__(self, other) -> BivarTrunc:
        if isinstance(other, (int, Fraction)):
            return BivarTrunc((p * other for p in self.parts), self.order)
        self._check(other)
        out = [UniPoly.zero("t") for _ in range(self.order + 1)]
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.parts[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BivarTrunc(out, self.order)

    __rmul__ = __mul__

    def is_s_nilpotent(self) -> bool:
        """True when the constant-in-s part vanishes."""
        return self.parts[0].is_zero()

    def __repr__(self) -> str:
        return f"BivarTrunc({list(self.parts)!r}, order={self.order})"


def trunc_exp(u: BivarTrunc) -> BivarTrunc:
    """exp(u) for s-nilpotent u: the finite sum of u^k/k! up to s^order."""
    if not u.is_s_nilpotent():
        raise ValueError("trunc_exp requires a zero constant-in-s part")
    acc = BivarTrunc.one(u.order)
    term = BivarTrunc.one(u.order)
    for k in range(1, u.order + 1):
        term = term * u * Fraction(1, k)
        acc = acc + term
    return acc


def trunc_binom_pow(u: BivarTrunc, exponent: int) -> BivarTrunc:
    """(1 + u)^exponent for s-nilpotent u, any integer exponent.

    The binomial series terminates at s^order because u is s-nilpotent, so
    the result is exact even for negative exponents.
    """
    if not u.is_s_nilpotent():
        raise ValueError("trunc_binom_pow requires a zero constant-in-s part")
    acc = BivarTrunc.one(u.order)
    term = BivarTrunc.one(u.order)
    coeff = Fraction(1)
    for k in range(1, u.order + 1):
        coeff *= Fraction(exponent - k + 1, k)
        if coeff == 0:
            break
        term = term * u
        acc = acc + term * coeff
    return acc


class RationalSeries:
    """The rational function ``numerator(t) / (1 - c*t)^k``."""

    __slots__ = ("numerator", "pole_base", "pole_order")

    def __init__(self, numerator: UniPoly, pole_base: Scalar, pole_order: int):
        if pole_order < 1:
            raise ValueError("pole order must be >= 1")
        if numerator.var != "t":
            raise ValueError("series numerator must be in t")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "pole_base", Fraction(pole_base))
        object.__setattr__(self, "pole_order", int(pole_order))

    def __setattr__(self, name, value):
        raise AttributeError("RationalSeries is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.pole_base == other.pole_base
            and self.pole_order == other.pole_order
        )

    def expand(self, order: int) -> list[Fraction]:
        """Exact coefficients of t^0 .. t^order."""
        if order < 0:
            raise ValueError("expansion order must be >= 0")
        c, k = self.pole_base, self.pole_order
        # (1 - c*t)^-k = sum_j C(j+k-1, k-1) c^j t^j
        base = [
            math.comb(j + k - 1, k - 1) * c**j for j in range(order + 1)
        ]
        num = self.numerator
        out = []
        for j in range(order + 1):
            total = Fraction(0)
            for i in range(min(j, len(num.coeffs) - 1), -1, -1):
                total += num[i] * base[j - i]
            out.append(total)
        return out

    def __repr__(self) -> str:
        return (
            f"RationalSeries(({self.numerator}) / "
            f"(1 - {self.pole_base}*t)^{self.pole_order})"
        )


def geometric_expansion(base: Scalar, order: int, n_terms: int) -> list[Fraction]:
    """Coefficients of (1 - base*t)^-order up to t^n_terms; order 0 gives 1."""
    if order == 0:
        return [Fraction(1)] + [Fraction(0)] * n_terms
    return RationalSeries(UniPoly.one("t"), base, order).expand(n_terms)


def convolve_series(a: list[Fraction], b: list[Fraction], n_terms: int) -> list[Fraction]:
    """Cauchy product of two coefficient lists, truncated at t^n_terms."""
    out = [Fraction(0)] * (n_terms + 1)
    for i, x in enumerate(a[: n_terms + 1]):
        if x == 0:
            continue
        for j in range(min(len(b), n_terms + 1 - i)):
            out[i + j] += x * b[j]
    return out
