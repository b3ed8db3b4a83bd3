"""Tests for execution.exactreal"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis.strategies import builds, fractions

from execution.exactreal import (
    ALPHA, ETA1, ETA2, ONE, ZERO, Enclosure, Ordering, QLin,
    linearly_independent, ql_arith, ql_compare, ql_enclose, ql_floor, ql_frac,
    ql_scale, rational_between, starting_precision,
)

GAMMA = QLin.of(-2, 1)  # √5 - 2

coefficients = fractions(min_value=-50, max_value=50, max_denominator=200)
qlins = builds(QLin.of, coefficients, coefficients, coefficients, coefficients)


def test_add_alpha_to_itself():
    assert ql_arith(ALPHA, ALPHA, 'add').coeffs == (-1, 1, 0, 0)


def test_add_eta1_and_alpha():
    assert ql_arith(ETA1, ALPHA, 'add') == QLin.of(Fraction(9, 2), Fraction(1, 2), 1, 0)


def test_sub_self_is_zero():
    assert ql_arith(ETA2, ETA2, 'sub').is_zero()


def test_unknown_operation():
    with pytest.raises(ValueError):
        ql_arith(ONE, ONE, 'mul')


def test_scale():
    assert ql_scale(ALPHA, 2) == QLin.of(-1, 1)
    assert ALPHA / 2 == QLin.of(Fraction(-1, 4), Fraction(1, 4))


def test_floats_are_refused():
    with pytest.raises(TypeError):
        QLin.of(0.5)
    with pytest.raises(TypeError):
        ALPHA * ALPHA


def test_compare_examples():
    assert ql_compare(ETA1, ETA1) is Ordering.EQUAL
    assert ql_compare(GAMMA, QLin.rational(Fraction(1, 4))) is Ordering.LESS
    assert ql_compare(ALPHA, QLin.rational(Fraction(1, 2))) is Ordering.GREATER
    assert ALPHA > Fraction(1, 2)
    assert ETA1 < ETA2


def test_frac_examples():
    assert ql_frac(ALPHA + ALPHA) == GAMMA
    assert ql_frac(QLin.rational(Fraction(1, 7))) == Fraction(1, 7)
    assert ql_frac(-ALPHA) == QLin.of(Fraction(3, 2), Fraction(-1, 2))


def test_floor():
    assert ql_floor(ALPHA + ALPHA) == 1
    assert ql_floor(-ALPHA) == -1
    assert ql_floor(ETA2) == 6
    assert ql_floor(QLin.rational(-3)) == -3


def test_enclose_zero_is_exact():
    assert ql_enclose(ZERO, Fraction(1, 3)) == Enclosure(Fraction(0), Fraction(0))


def test_enclose_alpha():
    e = ql_enclose(ALPHA, Fraction(1, 100))
    assert e.width <= Fraction(1, 100)
    assert e.lo < Fraction(618034, 10**6)
    assert e.hi > Fraction(618033, 10**6)


def test_enclose_eta2():
    e = ql_enclose(ETA2, Fraction(1, 10))
    assert e.width <= Fraction(1, 10)
    assert e.lo < Fraction(6733, 1000) and e.hi > Fraction(6732, 1000)


def test_enclose_needs_positive_width():
    with pytest.raises(ValueError):
        ql_enclose(ALPHA, 0)


def test_rational_between():
    q = rational_between(GAMMA, ONE - ALPHA)
    assert GAMMA < q < ONE - ALPHA
    with pytest.raises(ValueError):
        rational_between(ONE, ALPHA)


def test_linear_independence():
    assert linearly_independent([ONE, ALPHA, ETA1, ETA2])
    assert not linearly_independent([ONE, ALPHA, 2 * ALPHA - 1])
    assert not linearly_independent([ETA1, ETA1 + 1, ONE])


def test_str_and_json():
    assert str(ALPHA) == '-1/2 + 1/2√5'
    assert str(ZERO) == '0'
    assert ALPHA.to_json() == ['-1/2', '1/2', '0/1', '0/1']
    assert QLin.from_json(ETA1.to_json()) == ETA1
    with pytest.raises(ValueError):
        QLin.from_json(['1/2'])


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv('SUSPFACTOR_PRECISION', '1e-6')
    assert starting_precision() == Fraction(1, 10**6)
    monkeypatch.setenv('SUSPFACTOR_PRECISION', '1/1000')
    assert starting_precision() == Fraction(1, 1000)


@pytest.mark.parametrize('raw', ['abc', '0', '-1/2'])
def test_bad_precision(monkeypatch, raw):
    monkeypatch.setenv('SUSPFACTOR_PRECISION', raw)
    with pytest.raises(ValueError, match='SUSPFACTOR_PRECISION'):
        starting_precision()


def test_coarse_precision_still_orders(monkeypatch):
    monkeypatch.setenv('SUSPFACTOR_PRECISION', '1/2')
    assert GAMMA < Fraction(1, 4)
    assert ALPHA > Fraction(1, 2)


@settings(max_examples=1000, deadline=None)
@given(qlins, qlins)
def test_compare_matches_fine_enclosure(a, b):
    e = ql_enclose(a - b, Fraction(1, 10**64))
    assume(e.lo > 0 or e.hi < 0 or e.lo == e.hi == 0)
    if e.lo > 0:
        assert ql_compare(a, b) is Ordering.GREATER
    elif e.hi < 0:
        assert ql_compare(a, b) is Ordering.LESS
    else:
        assert ql_compare(a, b) is Ordering.EQUAL


@settings(max_examples=200, deadline=None)
@given(qlins, qlins)
def test_equal_iff_coefficients_match(a, b):
    assert (ql_compare(a, b) is Ordering.EQUAL) == (a.coeffs == b.coeffs)


@settings(max_examples=200, deadline=None)
@given(qlins)
def test_frac_is_idempotent_and_in_unit_interval(a):
    f = ql_frac(a)
    assert ZERO <= f < ONE
    assert ql_frac(f) == f
    assert (a - f).is_rational() and (a - f).rational_part.denominator == 1


@settings(max_examples=100, deadline=None)
@given(qlins, fractions(min_value=Fraction(1, 10**9), max_value=1))
def test_enclosure_contains_value(a, width):
    e = ql_enclose(a, width)
    assert e.width <= width
    finer = ql_enclose(a, width / 1000)
    assert finer.lo <= e.hi and e.lo <= finer.hi
