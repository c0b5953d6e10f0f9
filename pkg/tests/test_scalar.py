from fractions import Fraction

import pytest
from conftest import field, rational_q, scalars
from hypothesis import assume, given

from qferm.scalar import I, INV_SQRT2, ONE, Q, S, SQRT2, ZERO, ExactScalar, QISqrt2, as_scalar, gauss_binom, q_number


def test_field_units():
    i = QISqrt2(0, 1)
    r = QISqrt2(0, 0, 1)
    assert i * i == QISqrt2(-1)
    assert r * r == QISqrt2(2)
    assert (i * r) * (i * r) == QISqrt2(-2)
    assert complex(QISqrt2(1, 2, 3, 4)) == pytest.approx(1 + 2j + (3 + 4j) * 2**0.5)


@given(field, field, field)
def test_field_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(field)
def test_field_inverse_and_conjugate(x):
    assume(x)
    assert x * x.inverse() == QISqrt2(1)
    assert complex(x.conjugate()) == pytest.approx(complex(x).conjugate())


@given(field)
def test_field_parse_roundtrip(x):
    assert QISqrt2.parse(str(x)) == x


@given(scalars, scalars, scalars)
def test_laurent_ring_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == ZERO


@given(scalars)
def test_laurent_parse_roundtrip(x):
    assert ExactScalar.parse(str(x)) == x


@given(scalars, scalars, rational_q)
def test_evaluation_is_a_ring_map(x, y, q):
    qs = float(q) if q > 0 else complex(q)
    assert (x * y).evaluate(qs) == pytest.approx(x.evaluate(qs) * y.evaluate(qs), rel=1e-9, abs=1e-9)


def test_q_is_s_squared_and_units():
    assert S * S == Q
    assert Q * Q.inverse() == ONE
    assert I * I == as_scalar(-1)
    assert SQRT2 * INV_SQRT2 == ONE
    with pytest.raises(ZeroDivisionError):
        (S - S).inverse()
    with pytest.raises(ZeroDivisionError):
        (ONE + S).inverse()


def test_exact_evaluation_needs_rational_root():
    assert (S + Q).at_q(Fraction(9, 4)) == QISqrt2(Fraction(3, 2) + Fraction(9, 4))
    with pytest.raises(ValueError):
        S.at_q(Fraction(3, 2))
    assert Q.at_q(Fraction(3, 2)) == QISqrt2(Fraction(3, 2))


def test_q_numbers():
    assert q_number(0) == ZERO
    assert q_number(1) == ONE
    assert q_number(2) == Q + Q.inverse()
    assert q_number(3, 2) == Q**4 + ONE + Q**-4


@pytest.mark.parametrize("m", range(0, 6))
def test_gauss_binom_symmetric_and_classical(m):
    for n in range(m + 1):
        g = gauss_binom(m, n)
        assert g == gauss_binom(m, m - n)
        from math import comb

        assert g.evaluate(1.0) == pytest.approx(comb(m, n))


def test_gauss_binom_serre_coefficient():
    assert gauss_binom(2, 1, 2) == Q**2 + Q**-2
    with pytest.raises(ValueError):
        gauss_binom(2, 3)
