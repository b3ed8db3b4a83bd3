#!/usr/bin/env python3
"""
Builders for the five worked tiling-code examples.

Each builder fixes default parameters (α the golden rotation, η₁ = 5 + √2,
η₂ = 5 + √3), accepts overrides, checks every stated constraint and returns
an ExampleBundle with the systems, ceilings, map and expected fixtures.
Ceilings defined by a formula are derived by evaluating the formula on each
partition cell and floor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from execution.exactreal import ALPHA, ETA1, ETA2, ONE, ZERO, QLin, linearly_independent, ql_frac
from execution.factormap import (
    FactorMap, GeneralMapSpec, LocalSplitCode, Rule, SimpleMapSpec,
)
from execution.suspension import CeilingFunction, cocycle, constant_ceiling
from execution.symbolic import (
    Arc, BlockCode, CollapseCode, Level, Partition, SubshiftSystem, SymbolicPoint,
    advance, identity_code, orbit_hit, sample_in_arc,
)

EXAMPLE_IDS = (1, 2, 3, 4, 5)
DERIVATION_SAMPLES = 3
DERIVATION_SEED = 0
MIN_HEIGHT = 5

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class ParameterViolation(ValueError):
    """An example parameter breaks one of the example's constraints."""

    def __init__(self, example: int, parameter: str, value: object, constraint: str):
        self.example = example
        self.parameter = parameter
        self.value = value
        self.constraint = constraint
        super().__init__(f"Example {example}: {parameter} = {value} violates {constraint}")


@dataclass(frozen=True)
class Fixtures:
    """Value sets and behaviour each example is expected to show."""
    g_values: frozenset[QLin]
    h_values: frozenset[QLin]
    v_increments: Optional[frozenset[QLin]] = None
    local: bool = False
    injective: Optional[bool] = None
    two_to_one: bool = False
    coincidences: Optional[str] = None  # 'empty' or 'pure_eta2'

    def to_json(self) -> dict:
        def values(s):
            return None if s is None else [q.to_json() for q in sorted(s)]
        return {
            'g_values': values(self.g_values),
            'h_values': values(self.h_values),
            'v_increments': values(self.v_increments),
            'local': self.local,
            'injective': self.injective,
            'two_to_one': self.two_to_one,
            'coincidences': self.coincidences,
        }


@dataclass(frozen=True, eq=False)
class ExampleBundle:
    id: int
    g: CeilingFunction
    h: CeilingFunction
    map: FactorMap
    fixtures: Fixtures
    parameters: dict[str, QLin] = field(default_factory=dict)

    @property
    def source(self) -> SubshiftSystem:
        return self.g.system

    @property
    def target(self) -> SubshiftSystem:
        return self.h.system

    def scan_lengths(self) -> tuple[list[QLin], list[QLin]]:
        """Tile lengths of the source and target tilings, ascending."""
        return sorted(self.g.value_set()), sorted(self.h.value_set())

    def to_json(self) -> dict:
        return {
            'id': self.id,
            'parameters': {k: v.to_json() for k, v in sorted(self.parameters.items())},
            'source': self.source.to_json(),
            'g': self.g.to_json(),
            'target': self.target.to_json(),
            'h': self.h.to_json(),
            'map': self.map.describe(),
            'fixtures': self.fixtures.to_json(),
        }


# Shared construction

def _require(ok: bool, example: int, parameter: str, value: object, constraint: str) -> None:
    if not ok:
        raise ParameterViolation(example, parameter, value, constraint)


def _check_heights(example: int, eta1: QLin, eta2: QLin) -> None:
    _require(eta1 > MIN_HEIGHT, example, 'eta1', eta1, f"eta1 > {MIN_HEIGHT}")
    _require(eta2 > MIN_HEIGHT, example, 'eta2', eta2, f"eta2 > {MIN_HEIGHT}")


def _check_alpha(example: int, alpha: QLin) -> None:
    _require(not alpha.is_rational(), example, 'alpha', alpha, "alpha irrational")


def _in_rotation_orbit(alpha: QLin, point: QLin) -> bool:
    return orbit_hit(ZERO, alpha, point) is not None


def _split_ceiling(system: SubshiftSystem, division: QLin, low: QLin, high: QLin,
                   name: str) -> CeilingFunction:
    """`low` on cells left of `division`, `high` on the rest, on every floor."""
    values = {}
    for index, cell in enumerate(system.partition.cells):
        for level in system.levels_of(index):
            values[(index, level)] = low if cell.right <= division else high
    return CeilingFunction(system, values, name)


def _derive_ceiling(example: int, system: SubshiftSystem,
                    formula: Callable[[SymbolicPoint], QLin], name: str) -> CeilingFunction:
    rng = random.Random(DERIVATION_SEED)
    values = {}
    for index, cell in enumerate(system.partition.cells):
        for level in system.levels_of(index):
            seen = {
                formula(SymbolicPoint(system, sample_in_arc(Arc(cell.left, cell.right), system, rng), level))
                for _ in range(DERIVATION_SAMPLES)
            }
            _require(len(seen) == 1, example, name, sorted(seen),
                     f"{name} constant on cell {index} ({level.value})")
            values[(index, level)] = seen.pop()
    try:
        return CeilingFunction(system, values, name)
    except ValueError as e:
        raise ParameterViolation(example, name, sorted(values.values()), 'positive ceiling') from e


def _simple_map(example: int, source: SubshiftSystem, h: CeilingFunction,
                pi: BlockCode) -> SimpleMapSpec:
    t = Rule.rho()

    def formula(x: SymbolicPoint) -> QLin:
        return t.evaluate(advance(x, 1), pi) - t.evaluate(x, pi) + h(pi.apply(x))

    g = _derive_ceiling(example, source, formula, 'g')
    return SimpleMapSpec(pi, t, g, h, f"example{example}")


def _sturmian(alpha: QLin, breaks: list, labels: list, name: str,
              doubled_label: Optional[int] = None) -> SubshiftSystem:
    return SubshiftSystem(alpha, Partition.from_breaks(breaks, labels), doubled_label, name)


# Builders

def build_example1(alpha: QLin = ALPHA, gamma: Optional[QLin] = None,
                   eta1: QLin = ETA1, eta2: QLin = ETA2) -> ExampleBundle:
    """Identity on a Sturmian system, t = ρ: simple, one-to-one, not local."""
    _check_alpha(1, alpha)
    gamma = 2 * alpha - 1 if gamma is None else gamma
    _require(ZERO < gamma < QUARTER, 1, 'gamma', gamma, "0 < gamma < 1/4")
    _require(_in_rotation_orbit(alpha, gamma), 1, 'gamma', gamma, "gamma in Z·alpha mod 1")
    _check_heights(1, eta1, eta2)

    coding = _sturmian(alpha, [ZERO, HALF], [1, 0], 'X')
    source = SubshiftSystem(alpha, coding.partition.refine([gamma, ONE - alpha]), name='X')
    target = SubshiftSystem(alpha, coding.partition.refine([gamma]), name='Y')
    h = _split_ceiling(target, gamma, eta1, eta2, 'h')
    spec = _simple_map(1, source, h, identity_code(source, target))
    fixtures = Fixtures(
        g_values=frozenset({eta1 + alpha, eta2 + alpha, eta2 + alpha - 1}),
        h_values=frozenset({eta1, eta2}),
        injective=True,
    )
    return ExampleBundle(1, spec.g, h, spec, fixtures,
                         {'alpha': alpha, 'gamma': gamma, 'eta1': eta1, 'eta2': eta2})


def build_example2(alpha: QLin = ALPHA, gamma: Optional[QLin] = None,
                   eta1: QLin = ETA1, eta2: QLin = ETA2) -> ExampleBundle:
    """Quarter coding of R_α onto the half coding of R_2α: simple, two-to-one, not local."""
    _check_alpha(2, alpha)
    gamma = 2 * alpha - 1 if gamma is None else gamma
    _require(ZERO < gamma < QUARTER, 2, 'gamma', gamma, "0 < gamma < 1/4")
    _require(_in_rotation_orbit(alpha, gamma), 2, 'gamma', gamma, "gamma in Z·alpha mod 1")
    _check_heights(2, eta1, eta2)

    quarters = Partition.from_breaks([ZERO, QUARTER, HALF, 3 * QUARTER], [0, 1, 2, 3])
    source = SubshiftSystem(alpha, quarters.refine([gamma, ONE - alpha, HALF + gamma]), name='X')
    halves = Partition.from_breaks([ZERO, HALF], [0, 1])
    target = SubshiftSystem(ql_frac(2 * alpha), halves.refine([2 * gamma]), name='Y')
    h = _split_ceiling(target, 2 * gamma, eta1, eta2, 'h')
    pi = BlockCode({0: 0, 1: 1, 2: 0, 3: 1}, target, circle_factor=2)
    pi.check_total(source)
    spec = _simple_map(2, source, h, pi)
    fixtures = Fixtures(
        g_values=frozenset({eta1 + alpha, eta2 + alpha, eta2 + alpha - 1, eta1 + alpha - 1}),
        h_values=frozenset({eta1, eta2}),
        injective=False,
        two_to_one=True,
    )
    return ExampleBundle(2, spec.g, h, spec, fixtures,
                         {'alpha': alpha, 'gamma': gamma, 'eta1': eta1, 'eta2': eta2})


def build_example3(alpha: QLin = ALPHA, eta1: QLin = ETA1, eta2: QLin = ETA2) -> ExampleBundle:
    """Example 1 with γ = 1 - α and independent heights: no local code exists."""
    _check_alpha(3, alpha)
    gamma = ONE - alpha
    _check_heights(3, eta1, eta2)
    _require(linearly_independent([ONE, alpha, eta1, eta2]), 3, '(1, alpha, eta1, eta2)',
             [str(q) for q in (ONE, alpha, eta1, eta2)], "linear independence over Z")

    coding = _sturmian(alpha, [ZERO, HALF], [1, 0], 'X')
    _require(gamma < HALF, 3, 'gamma', gamma, "1 - alpha < 1/2")
    source = SubshiftSystem(alpha, coding.partition.refine([gamma]), name='X')
    target = SubshiftSystem(alpha, coding.partition.refine([gamma]), name='Y')
    h = _split_ceiling(target, gamma, eta1, eta2, 'h')
    spec = _simple_map(3, source, h, identity_code(source, target))
    fixtures = Fixtures(
        g_values=frozenset({eta1 + alpha, eta2 + alpha - 1}),
        h_values=frozenset({eta1, eta2}),
        injective=True,
        coincidences='empty',
    )
    return ExampleBundle(3, spec.g, h, spec, fixtures,
                         {'alpha': alpha, 'gamma': gamma, 'eta1': eta1, 'eta2': eta2})


def build_example4(alpha: QLin = ALPHA) -> ExampleBundle:
    """Unit tiles; every 1-tile is cut into two halves. Local, not simple."""
    _check_alpha(4, alpha)
    _require(alpha > HALF, 4, 'alpha', alpha, "alpha > 1/2")
    # Coding by [0, 1 - alpha) keeps the block 11 out of every sequence.
    one_cell = ONE - alpha

    source = _sturmian(alpha, [ZERO, one_cell], [1, 0], 'X')
    target = _sturmian(alpha, [ZERO, one_cell], [1, 0], 'Y', doubled_label=1)
    g = constant_ceiling(source, ONE, 'g')
    h = CeilingFunction(target, {
        (0, Level.GROUND): QLin.rational(HALF),
        (0, Level.UPPER): QLin.rational(HALF),
        (1, Level.GROUND): ONE,
    }, 'h')
    fixtures = Fixtures(
        g_values=frozenset({ONE}),
        h_values=frozenset({ONE, QLin.rational(HALF)}),
        local=True,
        injective=True,
    )
    return ExampleBundle(4, g, h, LocalSplitCode(g, h, 'example4'), fixtures, {'alpha': alpha})


def build_example5(alpha: QLin = ALPHA, beta: Optional[QLin] = None,
                   eta1: QLin = ETA1, eta2: QLin = ETA2) -> ExampleBundle:
    """Doubled system Y onto X through the 11 -> 1 collapse: neither simple nor local."""
    _check_alpha(5, alpha)
    beta = QLin.of(Fraction(3, 4), Fraction(-1, 4)) if beta is None else beta
    gamma = ONE - alpha
    _require(alpha > HALF, 5, 'alpha', alpha, "alpha > 1/2")
    _require(ZERO < beta < gamma, 5, 'beta', beta, "0 < beta < 1 - alpha")
    _require(not _in_rotation_orbit(alpha, beta), 5, 'beta', beta, "beta not in Z·alpha mod 1")
    _check_heights(5, eta1, eta2)

    coding = Partition.from_breaks([ZERO, beta], [1, 0])
    target = SubshiftSystem(alpha, coding.refine([gamma]), name='X')
    h = _split_ceiling(target, gamma, eta1, eta2, 'h')

    cuts = [gamma, ql_frac(gamma + beta), ql_frac(2 * gamma)]
    source = SubshiftSystem(alpha, coding.refine(cuts), doubled_label=1, name='Y')
    pi = CollapseCode(target)
    v = Rule.rho_after_step()

    def formula(y: SymbolicPoint) -> QLin:
        # m(y) = 1 off the ground floor of the 1-cylinder
        m = 0 if (y.level is Level.GROUND and y.symbol == source.doubled_label) else 1
        return v.evaluate(advance(y, 1), pi) - v.evaluate(y, pi) + cocycle(h, pi.apply(y), m)

    g = _derive_ceiling(5, source, formula, 'g')
    spec = GeneralMapSpec(pi, v, g, h, 'example5')
    fixtures = Fixtures(
        g_values=frozenset({alpha, alpha - 1 + eta1, eta2, eta2 + alpha, alpha - 1 + eta2}),
        h_values=frozenset({eta1, eta2}),
        v_increments=frozenset({ZERO, alpha, alpha - 1}),
        coincidences='pure_eta2',
    )
    return ExampleBundle(5, g, h, spec, fixtures,
                         {'alpha': alpha, 'beta': beta, 'gamma': gamma, 'eta1': eta1, 'eta2': eta2})


BUILDERS = {
    1: build_example1,
    2: build_example2,
    3: build_example3,
    4: build_example4,
    5: build_example5,
}


def build_example(example: int) -> ExampleBundle:
    if example not in BUILDERS:
        raise ValueError(f"Unknown example {example}; choose from {list(EXAMPLE_IDS)}")
    return BUILDERS[example]()


def expected_fixtures(example: int) -> Fixtures:
    return build_example(example).fixtures
