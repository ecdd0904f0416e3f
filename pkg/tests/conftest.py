"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the production code paths: polynomials are
dicts keyed by degree, products are double loops, powers are repeated
products.  Frozen expected values in the tests were computed with these.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from abelrank import preset_elliptic, preset_prym, preset_theta, random_descriptor


def naive_mul(a: dict, b: dict) -> dict:
    out: dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, Fraction(0)) + Fraction(x) * Fraction(y)
    return {k: v for k, v in out.items() if v != 0}


def naive_pow(a: dict, n: int) -> dict:
    out = {0: Fraction(1)}
    for _ in range(n):
        out = naive_mul(out, a)
    return out


def naive_coeff(a: dict, k: int) -> Fraction:
    return a.get(k, Fraction(0))


@pytest.fixture
def theta4():
    return preset_theta(4)


@pytest.fixture
def rng():
    return random.Random(20240811)


def preset_pool():
    pool = [preset_theta(g) for g in (2, 3, 4)]
    pool += [preset_prym(g, m, 2 * g - 2) for g in (2, 3) for m in (1, 2)]
    pool += [preset_elliptic(r, chi) for r in (1, 2) for chi in (1, 3)]
    return pool


def random_pool(count: int, seed: int, g_max: int = 5):
    gen = random.Random(seed)
    return [random_descriptor(gen, gen.randint(1, g_max)) for _ in range(count)]
