from __future__ import annotations

import random
from fractions import Fraction

import pytest

from jetdiff.jetbuilder import XY
from jetdiff.polyring import ExactPoly


def random_poly(rng: random.Random, degree: int, bound: int = 6,
                allow_zero_terms: bool = True) -> ExactPoly:
    """Random bivariate polynomial of degree <= degree (sparse unless told otherwise)."""
    terms = {}
    for h in range(degree + 1):
        for i in range(degree + 1 - h):
            value = rng.randint(-bound, bound)
            if value or not allow_zero_terms:
                terms[(h, i)] = Fraction(value if value else 1)
    return ExactPoly(XY, terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20120607)
