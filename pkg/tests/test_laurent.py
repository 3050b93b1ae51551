from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperres.laurent import SeriesError, TruncatedSeries, coefficient, series_invert_unit, series_mul

coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def series2(caps=(2, 2), unit=False):
    exps = st.tuples(st.integers(0, caps[0]), st.integers(0, caps[1]))
    terms = st.dictionaries(exps, coef, max_size=6)
    if unit:
        terms = st.tuples(terms, coef.filter(bool)).map(lambda t: {**t[0], (0, 0): t[1]})
    return terms.map(lambda t: TruncatedSeries(t, caps))


def z(caps):
    return TruncatedSeries.variable(0, caps)


def test_mul_examples():
    one = TruncatedSeries.constant(1, (3,))
    assert series_mul(one + z((3,)), one - z((3,))) == TruncatedSeries({(0,): 1, (2,): -1}, (3,))
    zinv = TruncatedSeries.monomial((-1,), (3,))
    assert (zinv * z((3,))).terms == {(0,): 1}
    a = TruncatedSeries({(0, 0): 1, (0, 1): 1}, (1, 1))
    b = TruncatedSeries({(0, 0): 1, (1, 0): 1}, (1, 1))
    assert (a * b).terms == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_mul_truncates_to_smaller_caps():
    a = TruncatedSeries({(0,): 1, (1,): 1}, (5,))
    b = TruncatedSeries({(0,): 1, (1,): 1}, (1,))
    assert (a * b).caps == (1,)
    assert (a * b).terms == {(0,): 1, (1,): 2}


def test_variable_mismatch():
    with pytest.raises(SeriesError):
        TruncatedSeries.constant(1, (1,)) * TruncatedSeries.constant(1, (1, 1))


def test_invert_examples():
    geo = series_invert_unit(TruncatedSeries({(0,): 1, (1,): -1}, (3,)))
    assert geo.terms == {(k,): 1 for k in range(4)}
    inv = series_invert_unit(TruncatedSeries({(0,): 2, (1,): 1}, (2,)))
    assert inv.terms == {(0,): Fraction(1, 2), (1,): Fraction(-1, 4), (2,): Fraction(1, 8)}
    assert series_invert_unit(TruncatedSeries.constant(1, (2,))).terms == {(0,): 1}
    with pytest.raises(SeriesError):
        series_invert_unit(TruncatedSeries({(1,): 1}, (2,)))


def test_coefficient_examples():
    assert coefficient(TruncatedSeries({(0,): 1, (1,): 3}, (2,)), (1,)) == 3
    s = TruncatedSeries.monomial((-1, -1), (2, 2)) * TruncatedSeries({(0, 0): 1, (0, 1): 1}, (2, 2))
    assert coefficient(s, (-1, -1)) == 1
    t = TruncatedSeries.monomial((-2, 0), (2, 2)) * TruncatedSeries({(0, 0): 1, (0, 1): 5}, (2, 2))
    assert coefficient(t, (-1, 0)) == 0
    with pytest.raises(SeriesError):
        coefficient(TruncatedSeries({(0,): 1}, (2,)), (3,))


def test_dump_is_sorted():
    s = TruncatedSeries({(1, 0): 2, (0, 0): Fraction(1, 2), (0, 1): -1}, (2, 2))
    assert s.dump().splitlines() == ["1/2 * 1", "-1 * z2^1", "2 * z1^1"]


@settings(max_examples=50, deadline=None)
@given(series2(), series2(), series2())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=50, deadline=None)
@given(series2(unit=True))
def test_inverse_is_inverse(a):
    assert (a * series_invert_unit(a)).terms == {(0, 0): 1}


@settings(max_examples=50, deadline=None)
@given(series2(caps=(3, 3)), series2(caps=(3, 3), unit=True))
def test_truncation_soundness(a, b):
    hi = a * series_invert_unit(b)
    lo = a.truncate((1, 2)) * series_invert_unit(b.truncate((1, 2)))
    assert hi.truncate((1, 2)) == lo
