"""Seeded random piecewise systems for the sweep tests."""

from __future__ import annotations

import random
from fractions import Fraction

from isocycles.centers import AffineMap, CenterSpec, LinearCenterParams, PiecewiseSystem

GENERIC_DEGREE = {
    "Lc-S3": 6,
    "Lc-S4": 6,
    "S1-S3": 10,
    "S1-S4": 10,
    "S2-S2": 16,
    "S2-S3": 26,
    "S2-S4": 26,
}


def rand_q(rng: random.Random, num: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_map(rng: random.Random) -> AffineMap:
    while True:
        vals = [rand_q(rng) for _ in range(6)]
        a, b, c, alpha, beta, gamma = vals
        if b * alpha - a * beta != 0:
            return AffineMap(a, b, c, alpha, beta, gamma)


def random_spec(rng: random.Random, family: str) -> CenterSpec:
    if family == "Lc":
        D = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        w = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        return CenterSpec("Lc", LinearCenterParams(rand_q(rng), rand_q(rng), rand_q(rng), D, w))
    return CenterSpec(family, random_map(rng))


def random_system(rng: random.Random, pairing: str) -> PiecewiseSystem:
    f1, f2 = pairing.split("-")
    return PiecewiseSystem(random_spec(rng, f1), random_spec(rng, f2), pairing)
