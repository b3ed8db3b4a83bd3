"""Tests for execution.symbolic"""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import fractions, integers

from execution.exactreal import ALPHA, ONE, ZERO, QLin, ql_frac
from execution.symbolic import (
    Arc, BlockCode, BoundaryHit, Cell, CollapseCode, GroundEmbedding, Level, Partition,
    SubshiftSystem, SymbolicPoint, advance, collapse_pi, cylinder, cylinder_arcs,
    genericity_check, identity_code, orbit_hit, rotate, sample_generic_rho, sample_in_arc,
    sample_point, shift, step_S, step_S_inverse, symbol_at, window,
)

HALF = Fraction(1, 2)
SEVENTH = QLin.rational(Fraction(1, 7))

X = SubshiftSystem(ALPHA, Partition.from_breaks([ZERO, HALF], [1, 0]), name='X')
D = SubshiftSystem(ALPHA, Partition.from_breaks([ZERO, ONE - ALPHA], [1, 0]), doubled_label=1, name='D')

generic_rationals = fractions(min_value=0, max_value=1, max_denominator=10**4).filter(
    lambda q: q < 1 and genericity_check(QLin.rational(q), X) is None
)


def test_partition_must_cover_unit_interval():
    with pytest.raises(ValueError):
        Partition((Cell(0, ZERO, QLin.rational(HALF)),))
    with pytest.raises(ValueError):
        Partition.from_breaks([ZERO, HALF], [0])
    with pytest.raises(ValueError):
        Partition((Cell(0, ZERO, QLin.rational(HALF)), Cell(1, QLin.rational(Fraction(2, 3)), ONE)))


def test_partition_refine_keeps_labels():
    refined = X.partition.refine([ONE - ALPHA, QLin.rational(HALF)])
    assert len(refined.cells) == 3
    assert [c.label for c in refined.cells] == [1, 1, 0]
    assert refined.boundaries[1] == ONE - ALPHA


def test_locate_on_boundary_raises():
    with pytest.raises(BoundaryHit) as e:
        X.partition.locate(QLin.rational(HALF))
    assert e.value.boundary == HALF


def test_rotation_angle_must_be_irrational():
    with pytest.raises(ValueError):
        SubshiftSystem(QLin.rational(Fraction(1, 3)), X.partition)
    with pytest.raises(ValueError):
        SubshiftSystem(ALPHA, X.partition, doubled_label=7)


def test_point_coordinate_range():
    with pytest.raises(ValueError):
        X.point(ONE)
    with pytest.raises(ValueError):
        X.point(-SEVENTH)


def test_symbols_along_orbit():
    x = X.point(SEVENTH)
    assert [symbol_at(x, n) for n in (-1, 0, 1, 2)] == [0, 1, 0, 1]
    assert window(x, 1) == (0, 1, 0)
    assert shift(x, 2).rho == ql_frac(SEVENTH + 2 * ALPHA)


def test_window_radius_must_be_non_negative():
    with pytest.raises(ValueError):
        window(X.point(SEVENTH), -1)


def test_genericity():
    assert genericity_check(SEVENTH, X) is None
    conflict = genericity_check(ZERO, X)
    assert conflict.n == 0 and conflict.boundary == ZERO

    rho0 = ql_frac(HALF - 3 * ALPHA)
    conflict = genericity_check(rho0, X)
    assert conflict.n == 3 and conflict.boundary == HALF
    assert orbit_hit(rho0, ALPHA, QLin.rational(HALF)) == 3
    assert orbit_hit(rho0, ALPHA, ZERO) is None


def test_symbol_at_reports_the_step_that_hits():
    rho0 = ql_frac(HALF - 3 * ALPHA)
    with pytest.raises(BoundaryHit) as e:
        window(X.point(rho0), 3)
    assert e.value.n == 3
    assert e.value.rho == rho0


def test_doubled_step_and_inverse():
    y = D.point(SEVENTH)
    assert y.symbol == 1
    up = step_S(y)
    assert up.level is Level.UPPER and up.rho == SEVENTH
    after = step_S(up)
    assert after.level is Level.GROUND and after.rho == rotate(SEVENTH, 1, ALPHA)
    assert after.symbol == 0
    assert step_S_inverse(after) == up
    assert step_S_inverse(up) == y
    assert advance(advance(y, 5), -5) == y


def test_doubled_symbols_repeat_the_doubled_label():
    y = D.point(SEVENTH)
    assert [symbol_at(y, n) for n in range(3)] == [1, 1, 0]


def test_upper_floor_only_over_doubled_label():
    with pytest.raises(ValueError):
        D.point(QLin.rational(HALF), Level.UPPER)
    with pytest.raises(ValueError):
        X.point(SEVENTH, Level.UPPER)


def test_step_kinds_are_checked():
    with pytest.raises(ValueError):
        shift(D.point(SEVENTH))
    with pytest.raises(ValueError):
        step_S(X.point(SEVENTH))


def test_collapse_and_ground_embedding():
    upper = D.point(SEVENTH, Level.UPPER)
    x = collapse_pi(upper)
    assert not x.system.is_doubled and x.rho == SEVENTH
    assert CollapseCode(X).apply(upper).system is X
    assert GroundEmbedding(D).apply(X.point(SEVENTH)) == D.point(SEVENTH)
    with pytest.raises(ValueError):
        collapse_pi(X.point(SEVENTH))


def test_block_code():
    target = SubshiftSystem(ql_frac(2 * ALPHA), X.partition, name='Y')
    code = BlockCode({0: 0, 1: 1}, target, circle_factor=2)
    image = code.apply(X.point(QLin.rational(Fraction(3, 10))))
    assert image.rho == Fraction(3, 5) and image.system is target
    assert code.translate_word((1, 0, 1)) == (1, 0, 1)
    with pytest.raises(ValueError):
        BlockCode({0: 0}, target).check_total(X)
    assert identity_code(X).describe()['table'] == {'0': 0, '1': 1}


def test_cylinder_of_single_symbol():
    assert cylinder((1,), X, 0) == [Arc(ZERO, QLin.rational(HALF))]
    assert cylinder((0,), X, 0) == [Arc(QLin.rational(HALF), ONE)]


def test_block_11_never_occurs_in_narrow_coding():
    narrow = D.plain()
    assert cylinder((1, 1), narrow, 0) == []


def test_cylinder_arcs_cover_the_circle():
    rng = random.Random(3)
    pieces = cylinder_arcs(X, 2)
    assert pieces[0][1].left == ZERO and pieces[-1][1].right == ONE
    for (_, a), (_, b) in zip(pieces, pieces[1:]):
        assert a.right == b.left
    for word, arc in pieces:
        rho = sample_in_arc(arc, X, rng)
        assert arc.contains(rho)
        assert window(X.point(rho), 2) == word
        assert any(a.contains(rho) for a in cylinder(word, X, -2))


def test_cylinder_arcs_refuse_doubled_systems():
    with pytest.raises(ValueError):
        cylinder_arcs(D, 1)


def test_sampling_is_seeded_and_generic():
    first = [sample_generic_rho(X, random.Random(11)) for _ in range(3)]
    second = [sample_generic_rho(X, random.Random(11)) for _ in range(3)]
    assert first == second
    assert all(genericity_check(rho, X) is None for rho in first)

    rng = random.Random(5)
    levels = {sample_point(D, rng).level for _ in range(50)}
    assert levels == {Level.GROUND, Level.UPPER}


@settings(max_examples=50, deadline=None)
@given(generic_rationals, integers(min_value=0, max_value=4))
def test_point_lies_in_its_own_cylinder(q, r):
    x = X.point(q)
    word = window(x, r)
    assert any(arc.contains(x.rho) for arc in cylinder(word, X, -r))


@settings(max_examples=50, deadline=None)
@given(generic_rationals, integers(min_value=-8, max_value=8))
def test_advance_matches_rotation(q, n):
    x = X.point(q)
    assert advance(x, n).rho == rotate(x.rho, n, ALPHA)
    assert symbol_at(x, n) == advance(x, n).symbol


def test_collapse_intertwines_step_and_shift():
    rng = random.Random(17)
    for _ in range(200):
        p = sample_point(D, rng)
        image = collapse_pi(step_S(p))
        if p.level is Level.GROUND and p.symbol == D.doubled_label:
            assert image.same_place(collapse_pi(p))
        else:
            assert image.same_place(shift(collapse_pi(p)))


def test_symbols_of_the_shifted_point_move_by_one():
    rng = random.Random(19)
    for _ in range(20):
        x = X.point(sample_generic_rho(X, rng))
        moved = shift(x)
        for n in range(-100, 101):
            assert symbol_at(moved, n) == symbol_at(x, n + 1)


def test_every_sample_of_a_cylinder_spells_its_word():
    rng = random.Random(23)
    for word, arc in cylinder_arcs(X, 3):
        for piece in cylinder(word, X, -3):
            for _ in range(100):
                rho = sample_in_arc(piece, X, rng)
                assert window(X.point(rho), 3) == word
        for _ in range(100):
            assert window(X.point(sample_in_arc(arc, X, rng)), 3) == word


@pytest.mark.parametrize('system', [X, D], ids=['plain', 'doubled'])
def test_system_json_round_trip(system):
    data = json.loads(json.dumps(system.to_json()))
    restored = SubshiftSystem.from_json(data)
    assert restored == system
    assert restored.kind == system.kind
    assert restored.name == system.name
