from fractions import Fraction

import pytest
from hypothesis import given

from oracles import close, field_pair
from quatclifford.scalar_field import (
    I,
    ONE,
    SQRT2,
    ZERO,
    FieldElement,
    field_add,
    field_conj,
    field_inv,
    field_mul,
)
from strategies import field_elements, nonzero_field

HALF_ROOT = SQRT2 / 2


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (ONE + I, ONE - I, FieldElement(2)),
        (HALF_ROOT, HALF_ROOT, SQRT2),
        (ZERO, FieldElement(3, -1, 2, 5), FieldElement(3, -1, 2, 5)),
    ],
)
def test_addition_examples(x, y, expected):
    assert field_add(x, y) == expected


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (ONE + I, ONE - I, FieldElement(2)),
        (HALF_ROOT, HALF_ROOT, FieldElement(Fraction(1, 2))),
        (I * SQRT2, I * SQRT2, FieldElement(-2)),
    ],
)
def test_multiplication_examples(x, y, expected):
    assert field_mul(x, y) == expected


def test_inverse_examples():
    assert field_inv(FieldElement(2)) == FieldElement(Fraction(1, 2))
    assert field_inv(SQRT2) == HALF_ROOT
    assert field_inv(ONE + I) == (ONE - I) / 2


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_inv(ZERO)


def test_conjugation_examples():
    assert field_conj(I) == -I
    assert field_conj(FieldElement(Fraction(3, 5))) == FieldElement(Fraction(3, 5))
    assert field_conj(I * SQRT2) == -(I * SQRT2)


def test_json_roundtrip_and_shape():
    x = FieldElement(Fraction(1, 2), -3, Fraction(-7, 9), 0)
    data = x.to_json()
    assert len(data) == 4 and all(len(pair) == 2 and all(isinstance(s, str) for s in pair) for pair in data)
    assert FieldElement.from_json(data) == x


@given(field_elements, field_elements)
def test_sum_and_product_agree_with_both_embeddings(x, y):
    for k in range(2):
        assert close(field_pair(x + y)[k], field_pair(x)[k] + field_pair(y)[k])
        assert close(field_pair(x * y)[k], field_pair(x)[k] * field_pair(y)[k])


@given(nonzero_field)
def test_inverse_is_exact_and_matches_float_oracle(x):
    assert x * field_inv(x) == ONE
    assert close(field_pair(field_inv(x))[0], 1 / field_pair(x)[0])


@given(field_elements, field_elements, field_elements)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(field_elements, field_elements)
def test_conjugation_is_an_involutive_automorphism(x, y):
    assert field_conj(field_conj(x)) == x
    assert field_conj(x * y) == field_conj(x) * field_conj(y)
    assert field_conj(x + y) == field_conj(x) + field_conj(y)
    assert close(field_pair(field_conj(x))[0], field_pair(x)[0].conjugate())


@given(field_elements)
def test_sigma_flips_root_two(x):
    assert close(field_pair(x.sigma())[0], field_pair(x)[1])
    assert x.norm() == (x * x.conj() * x.sigma() * x.sigma().conj()).to_fraction()


def test_thousand_random_inverses():
    import random

    rng = random.Random(7)
    count = 0
    while count < 1000:
        x = FieldElement(*(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4)))
        if x:
            assert x * x.inv() == ONE
            count += 1
