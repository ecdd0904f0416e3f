"""Input data model: descriptors, validation, presets and JSON round-trip.

A descriptor carries exactly the invariants every rank formula consumes:

* ``g``        -- the dimension,
* ``chi``      -- the (non-negative integer) Euler characteristic,
* ``gamma``    -- the diagonal characteristic class, as coefficients c_0..c_g
  of powers of the dual polarization class (c_i in cohomological degree 2i),
* ``spectrum`` -- finitely many entries, each a signed Poincare polynomial
  h in s of degree < g with constant term chi.

Evaluation of a top-degree class coefficient r (the s^g slot) against the
fundamental class yields r * g!.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputParseError, SchemaError
from .exact import NEG_INF, UniPoly, format_rational, parse_rational
from .specialpolys import iota


@dataclass(frozen=True)
class DiagonalClass:
    """Class in the subring generated by the dual polarization: sum c_i * L^i.

    The s-degree of each term equals its L-degree, so powers and Adams
    scalings reduce to univariate polynomial arithmetic truncated at s^g.
    """

    g: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be >= 1")
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.g + 1:
            raise ValueError(
                f"gamma needs exactly g+1 = {self.g + 1} coefficients, "
                f"got {len(cs)}"
            )
        object.__setattr__(self, "coeffs", cs)

    def poly(self) -> UniPoly:
        """The aligned representation as a polynomial in s."""
        return UniPoly(self.coeffs, "s")

    def adams(self, n: int) -> DiagonalClass:
        """Pullback under multiplication by n: scales c_i by n^(2i)."""
        return DiagonalClass(
            self.g,
            tuple(c * n ** (2 * i) for i, c in enumerate(self.coeffs)),
        )

    def top_evaluation(self) -> Fraction:
        """Evaluate the top coefficient on the fundamental class: c_g * g!."""
        return self.coeffs[self.g] * math.factorial(self.g)


@dataclass(frozen=True)
class SpectrumEntry:
    """One character in the spectrum, stored as its polynomial h in s.

    h is the source of truth; the symmetric Laurent form and the exponents
    nu_n are derived from it on demand.
    """

    h: UniPoly

    def __post_init__(self):
        if self.h.var != "s":
            raise ValueError("spectrum entry must be a polynomial in s")

    def laurent(self):
        """The signed Poincare polynomial b in x, i.e. iota(h)."""
        return iota(self.h)

    def nu(self) -> dict[int, int]:
        """Graded exponents for n > 0: nu_n = -a_n where iota(h) has the
        symmetric form a_0 + sum_{n>0} a_n (x^n + x^-n).

        In terms of the underlying graded dimensions (a_n carries the sign
        (-1)^n) this is the alternating convention nu_n = (-1)^(n+1) dim_n.
        """
        out = {}
        for n, a in self.laurent().items():
            if n == 0:
                continue
            if a.denominator != 1:
                raise ValueError("spectrum entry has non-integer Betti data")
            out[n] = -int(a)
        return out


@dataclass(frozen=True)
class SheafDescriptor:
    g: int
    chi: Fraction
    gamma: DiagonalClass
    spectrum: tuple[SpectrumEntry, ...] = ()

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be >= 1")
        if self.gamma.g != self.g:
            raise ValueError("gamma dimension differs from descriptor g")
        object.__setattr__(self, "chi", Fraction(self.chi))
        object.__setattr__(self, "spectrum", tuple(self.spectrum))

    def generic_rank(self) -> Fraction:
        """Top evaluation of gamma; the constant term of both numerators."""
        return self.gamma.top_evaluation()


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    path: str = "$"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_doc(self) -> dict:
        return {
            "ok": self.ok,
            "issues": [
                {"code": i.code, "message": i.message, "path": i.path}
                for i in self.issues
            ],
        }


def validate(d: SheafDescriptor) -> ValidationReport:
    """Check every value-level invariant; report-style, never raises."""
    issues = []

    def bad(code, message, path="$"):
        issues.append(ValidationIssue(code, message, path))

    if d.chi.denominator != 1:
        bad("chi_integer", f"chi must be an integer, got {d.chi}", "$.chi")
    if d.chi < 0:
        bad("chi_nonnegative", f"chi must be >= 0, got {d.chi}", "$.chi")
    if d.gamma.coeffs[0] != d.chi:
        bad(
            "gamma_constant",
            f"gamma c_0 = {d.gamma.coeffs[0]} must equal chi = {d.chi}",
            "$.gamma[0]",
        )
    if d.gamma.coeffs[d.g] < 0:
        bad(
            "generic_rank_sign",
            f"top gamma coefficient must be >= 0, got {d.gamma.coeffs[d.g]}",
            f"$.gamma[{d.g}]",
        )
    for k, entry in enumerate(d.spectrum):
        path = f"$.spectrum[{k}]"
        if entry.h[0] != d.chi:
            bad(
                "spectrum_constant",
                f"spectrum entry constant term {entry.h[0]} must equal "
                f"chi = {d.chi}",
                path,
            )
        if entry.h.degree != NEG_INF and entry.h.degree >= d.g:
            bad(
                "spectrum_degree",
                f"spectrum entry degree {entry.h.degree} must be < g = {d.g}",
                path,
            )
        if any(c.denominator != 1 for c in entry.h):
            bad(
                "spectrum_integer",
                "spectrum entry coefficients must be integers",
                path,
            )
    return ValidationReport(tuple(issues))


# ---------------------------------------------------------------------------
# Presets


def preset_theta(g: int) -> SheafDescriptor:
    """Smooth theta divisor on a principally polarized abelian variety.

    chi = g!, gamma coefficients c_i = (g-i)!/i! for i < g and c_g = 0,
    and a single spectrum entry
    h = g! + sum_{k=1..g-1} Catalan(k) * s^(g-k).
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    coeffs = [
        Fraction(math.factorial(g - i), math.factorial(i)) for i in range(g)
    ] + [Fraction(0)]
    h = [Fraction(0)] * g
    h[0] = Fraction(math.factorial(g))
    for k in range(1, g):
        h[g - k] = Fraction(math.comb(2 * k, k), k + 1)
    return SheafDescriptor(
        g=g,
        chi=Fraction(math.factorial(g)),
        gamma=DiagonalClass(g, tuple(coeffs)),
        spectrum=(SpectrumEntry(UniPoly(h, "s")),),
    )


def preset_prym(g: int, m: int, chi: int) -> SheafDescriptor:
    """Generating curve of exponent m: gamma = chi + m*L*s, spectrum {h = chi + s}.

    m = 1 with chi = 2g-2 is the Jacobian case.  For g = 1 the construction
    is degenerate (the spectrum entry has degree g) and fails validation.
    """
    if g < 1 or m < 1:
        raise ValueError("g and m must be >= 1")
    coeffs = [Fraction(chi), Fraction(m)] + [Fraction(0)] * (g - 1)
    return SheafDescriptor(
        g=g,
        chi=Fraction(chi),
        gamma=DiagonalClass(g, tuple(coeffs[: g + 1])),
        spectrum=(SpectrumEntry(UniPoly([chi, 1], "s")),),
    )


def preset_elliptic(r: int, chi: int) -> SheafDescriptor:
    """Dimension-one case: gamma = chi + r * (point class), empty spectrum."""
    if r < 1 or chi < 1:
        raise ValueError("r and chi must be >= 1")
    return SheafDescriptor(
        g=1,
        chi=Fraction(chi),
        gamma=DiagonalClass(1, (Fraction(chi), Fraction(r))),
        spectrum=(),
    )


def random_descriptor(rng: random.Random, g: int | None = None) -> SheafDescriptor:
    """A valid descriptor with small integer data, for property sweeps."""
    if g is None:
        g = rng.randint(1, 5)
    chi = rng.randint(1, 24)
    coeffs = [Fraction(chi)]
    coeffs += [Fraction(rng.randint(-3, 3)) for _ in range(g - 1)]
    coeffs.append(Fraction(rng.randint(0, 3)))
    spectrum = []
    for _ in range(rng.randint(0, 3)):
        h = [Fraction(chi)]
        h += [Fraction(rng.randint(-4, 4)) for _ in range(g - 1)]
        spectrum.append(SpectrumEntry(UniPoly(h, "s")))
    return SheafDescriptor(
        g=g,
        chi=Fraction(chi),
        gamma=DiagonalClass(g, tuple(coeffs)),
        spectrum=tuple(spectrum),
    )


# ---------------------------------------------------------------------------
# JSON round-trip
#
# Schema (rationals as decimal-integer strings or "p/q" strings):
#   { "g": 4, "chi": "24", "gamma": ["24","6","1","1/6","0"],
#     "spectrum": [ ["24","5","2","1"] ] }
# gamma is ascending in s-degree of length g+1; each spectrum entry is
# ascending in s-degree of length <= g.


def _schema_rational(value, path: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a rational string, got {value!r}")
    try:
        return parse_rational(value)
    except ValueError:
        raise SchemaError(path, f"not a rational literal: {value!r}") from None


def descriptor_from_doc(doc) -> SheafDescriptor:
    """Build a descriptor from a parsed JSON document, checking the schema."""
    if not isinstance(doc, dict):
        raise SchemaError("$", "descriptor document must be a JSON object")
    unknown = set(doc) - {"g", "chi", "gamma", "spectrum"}
    if unknown:
        raise SchemaError("$", f"unknown fields: {sorted(unknown)}")
    for key in ("g", "chi", "gamma"):
        if key not in doc:
            raise SchemaError(f"$.{key}", "missing required field")
    g = doc["g"]
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise SchemaError("$.g", f"g must be a positive integer, got {g!r}")
    chi = _schema_rational(doc["chi"], "$.chi")
    gamma = doc["gamma"]
    if not isinstance(gamma, list):
        raise SchemaError("$.gamma", "gamma must be an array")
    if len(gamma) != g + 1:
        raise SchemaError(
            "$.gamma", f"gamma must have length g+1 = {g + 1}, got {len(gamma)}"
        )
    coeffs = tuple(
        _schema_rational(c, f"$.gamma[{i}]") for i, c in enumerate(gamma)
    )
    spectrum = []
    raw_spectrum = doc.get("spectrum", [])
    if not isinstance(raw_spectrum, list):
        raise SchemaError("$.spectrum", "spectrum must be an array")
    for k, entry in enumerate(raw_spectrum):
        path = f"$.spectrum[{k}]"
        if not isinstance(entry, list):
            raise SchemaError(path, "spectrum entry must be an array")
        if not 1 <= len(entry) <= g:
            raise SchemaError(
                path, f"spectrum entry length must be in 1..g = {g}"
            )
        h = [
            _schema_rational(c, f"{path}[{i}]") for i, c in enumerate(entry)
        ]
        spectrum.append(SpectrumEntry(UniPoly(h, "s")))
    return SheafDescriptor(
        g=g, chi=chi, gamma=DiagonalClass(g, coeffs), spectrum=tuple(spectrum)
    )


def descriptor_to_doc(d: SheafDescriptor) -> dict:
    """Serialize to the JSON schema; inverse of :func:`descriptor_from_doc`."""
    return {
        "g": d.g,
        "chi": format_rational(d.chi),
        "gamma": [format_rational(c) for c in d.gamma.coeffs],
        "spectrum": [
            entry.h.coeff_strings(min_len=1) for entry in d.spectrum
        ],
    }


def parse_descriptor(text: str) -> SheafDescriptor:
    """Parse a JSON descriptor document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"malformed JSON: {e}") from None
    return descriptor_from_doc(doc)


def serialize_descriptor(d: SheafDescriptor) -> str:
    """Canonical JSON text; round-trips byte-exactly after normalization."""
    return json.dumps(descriptor_to_doc(d), indent=2) + "\n"
