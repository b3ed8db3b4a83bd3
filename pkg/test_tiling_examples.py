"""Tests for execution.tiling_examples"""

from fractions import Fraction

import pytest

from execution.exactreal import ALPHA, ETA1, ETA2, ONE, QLin, ql_frac
from execution.symbolic import SubshiftSystem, cylinder
from execution.tiling_examples import (
    EXAMPLE_IDS, ParameterViolation, build_example, build_example1, build_example2,
    build_example3, build_example4, build_example5, expected_fixtures,
)

HALF = QLin.rational(Fraction(1, 2))


@pytest.mark.parametrize('example', EXAMPLE_IDS)
def test_ceiling_values_match_fixtures(example):
    bundle = build_example(example)
    assert bundle.g.value_set() == bundle.fixtures.g_values
    assert bundle.h.value_set() == bundle.fixtures.h_values


def test_example3_tile_lengths():
    bundle = build_example(3)
    assert bundle.g.value_set() == {ETA1 + ALPHA, ETA2 + ALPHA - 1}
    assert bundle.fixtures.coincidences == 'empty'


def test_example5_tile_lengths():
    bundle = build_example(5)
    assert bundle.g.value_set() == {ALPHA, ALPHA - 1 + ETA1, ETA2, ETA2 + ALPHA, ALPHA - 1 + ETA2}
    assert bundle.h.value_set() == {ETA1, ETA2}
    assert bundle.source.is_doubled and not bundle.target.is_doubled
    assert bundle.fixtures.v_increments == {QLin.rational(0), ALPHA, ALPHA - 1}


def test_example1_parameters():
    bundle = build_example(1)
    gamma = bundle.parameters['gamma']
    assert gamma == 2 * ALPHA - 1
    assert bundle.h(bundle.target.point(gamma / 2)) == ETA1
    assert bundle.h(bundle.target.point(Fraction(3, 5))) == ETA2


def test_example2_target_rotation():
    bundle = build_example(2)
    assert bundle.target.alpha == ql_frac(2 * ALPHA)
    assert bundle.map.pi.circle_factor == 2
    assert bundle.fixtures.two_to_one and bundle.fixtures.injective is False


def test_example4_never_shows_block_11():
    bundle = build_example(4)
    assert cylinder((1, 1), bundle.source, 0) == []
    assert bundle.map.describe() == {'type': 'local_split', 'split_label': 1, 'radius': 0}
    assert bundle.fixtures.local


def test_gamma_outside_range():
    with pytest.raises(ParameterViolation) as e:
        build_example1(gamma=QLin.rational(Fraction(1, 3)))
    assert e.value.example == 1 and e.value.parameter == 'gamma'


def test_gamma_off_the_rotation_orbit():
    with pytest.raises(ParameterViolation) as e:
        build_example2(gamma=QLin.rational(Fraction(1, 5)))
    assert 'Z·alpha' in e.value.constraint


def test_heights_must_exceed_five():
    with pytest.raises(ParameterViolation) as e:
        build_example1(eta1=QLin.rational(4))
    assert e.value.parameter == 'eta1'


def test_dependent_heights():
    with pytest.raises(ParameterViolation) as e:
        build_example3(eta2=ETA1 + 1)
    assert 'independence' in e.value.constraint


def test_rational_alpha():
    with pytest.raises(ParameterViolation) as e:
        build_example1(alpha=QLin.rational(Fraction(2, 3)))
    assert e.value.parameter == 'alpha'


def test_small_alpha_for_split_code():
    with pytest.raises(ParameterViolation):
        build_example4(alpha=ALPHA / 2)


def test_beta_on_the_rotation_orbit():
    with pytest.raises(ParameterViolation) as e:
        build_example5(beta=2 * ALPHA - 1)
    assert e.value.parameter == 'beta'


def test_beta_outside_range():
    with pytest.raises(ParameterViolation):
        build_example5(beta=ONE - ALPHA + Fraction(1, 100))


def test_parameter_violation_is_a_value_error():
    assert issubclass(ParameterViolation, ValueError)


def test_unknown_example():
    with pytest.raises(ValueError):
        build_example(9)


def test_expected_fixtures_and_json():
    fixtures = expected_fixtures(5)
    assert fixtures.coincidences == 'pure_eta2'
    data = build_example(5).to_json()
    assert data['id'] == 5
    assert data['map']['type'] == 'general'
    assert data['source']['kind'] == 'doubled'
    assert data['fixtures']['v_increments'] is not None
    assert set(data['parameters']) == {'alpha', 'beta', 'gamma', 'eta1', 'eta2'}


def test_scan_lengths_are_sorted():
    lengths_a, lengths_b = build_example(1).scan_lengths()
    assert lengths_a == sorted(lengths_a)
    assert lengths_b == [ETA1, ETA2]


@pytest.mark.parametrize('example', EXAMPLE_IDS)
def test_bundle_systems_decode_from_json(example):
    bundle = build_example(example)
    data = bundle.to_json()
    assert SubshiftSystem.from_json(data['source']) == bundle.source
    assert SubshiftSystem.from_json(data['target']) == bundle.target
