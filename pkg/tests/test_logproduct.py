import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexdimer.logproduct import ONE, ZERO, LogProduct, PrecisionError, product, signed_sum

nonzero = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


@given(nonzero, nonzero)
@settings(max_examples=100, deadline=None)
def test_multiplication_matches_complex(a, b):
    got = (LogProduct.from_complex(a) * LogProduct.from_complex(b)).value()
    assert got == pytest.approx(a * b, rel=1e-12)


@given(nonzero, nonzero)
@settings(max_examples=100, deadline=None)
def test_division_matches_complex(a, b):
    got = (LogProduct.from_complex(a) / LogProduct.from_complex(b)).value()
    assert got == pytest.approx(a / b, rel=1e-12)


@given(nonzero, st.integers(-6, 6))
@settings(max_examples=60, deadline=None)
def test_power(a, k):
    got = (LogProduct.from_complex(a) ** k).value()
    assert got == pytest.approx(a**k, rel=1e-10)


def test_phase_stays_wrapped():
    z = LogProduct.from_complex(cmath.exp(3j))
    p = product([z] * 100)
    assert -math.pi < p.phase <= math.pi
    assert p.log() == pytest.approx(complex(0, math.remainder(300, 2 * math.pi)))


def test_huge_products_do_not_overflow():
    big = LogProduct.from_log(800.0)
    p = big * big
    assert p.log_magnitude == 1600.0
    assert p.value_if_representable() is None
    with pytest.raises(OverflowError):
        p.value()


def test_zero_behaviour():
    assert (ZERO * LogProduct.from_complex(3)).zero
    assert ZERO.value() == 0
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ValueError):
        ZERO.log()


def test_signed_sum_shifts_exponents():
    a = LogProduct.from_log(1000.0)
    b = LogProduct.from_log(1000.0 + math.log(2))
    s = signed_sum([a, b], [1, 1])
    assert s.log_magnitude == pytest.approx(1000 + math.log(3), abs=1e-12)


def test_signed_sum_detects_cancellation():
    a = LogProduct.from_complex(1.0)
    b = LogProduct.from_complex(1.0 + 1e-12)
    with pytest.raises(PrecisionError):
        signed_sum([a, b], [1, -1], floor=1e-8)
    assert signed_sum([a, b], [1, -1]).log_magnitude == pytest.approx(math.log(1e-12), rel=1e-3)


def test_mpmath_fields_are_kept():
    with mpmath.workdps(40):
        z = LogProduct.from_complex(mpmath.mpc(2, 3)) * LogProduct.from_complex(mpmath.mpc(-1, 0.5))
        assert isinstance(z.log_magnitude, mpmath.mpf)
        assert abs(z.value() - mpmath.mpc(2, 3) * mpmath.mpc(-1, 0.5)) < mpmath.mpf(10) ** -35


def test_is_real():
    assert LogProduct.from_complex(-4.0).is_real()
    assert not LogProduct.from_complex(1j).is_real()
