#!/usr/bin/env python3
"""
Seeded verification suites over the example bundles.

Every suite draws all of its randomness from one random.Random(seed), so a
given (example, samples, seed) always produces the same report document.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from execution.exactreal import ZERO, QLin
from execution.factormap import (
    CheckResult, GeneralMapSpec, LocalSplitCode, SimpleMapSpec, Witness,
    check_cohom, check_commute, check_injective_pair, check_pair_collapse,
    check_simple_identity, check_transfer_identity, length_coincidence_scan,
    locality_witness, merge_patch, split_patch, transfer_increments,
)
from execution.suspension import (
    CeilingFunction, SuspensionPoint, canonical, cocycle, equivalent, floor_index, flow, patch,
)
from execution.symbolic import Level, advance, genericity_check, sample_generic_rho, sample_point
from execution.tiling_examples import ExampleBundle

GENERATOR = 'random.Random (Mersenne Twister)'
DENOMINATOR = 1000
MAX_FAILURE_DETAILS = 10
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 7
DEFAULT_MAX_RADIUS = 5
COMMUTE_RANGE = 50
FLOW_RANGE = 100
COCYCLE_RANGE = 10
INJECTIVITY_BOUND = 64
MIN_CROSSINGS = 50

Log = Callable[[str], None]


def _silent(message: str) -> None:
    pass


@dataclass
class CheckSummary:
    """Pass count and the first failures of one check."""
    check: str
    samples: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.passes == self.samples

    def record(self, result: CheckResult | bool, detail: Optional[dict] = None) -> None:
        """Count one sample; keep the detail of the first few failures."""
        self.samples += 1
        if result:
            self.passes += 1
        elif len(self.failures) < MAX_FAILURE_DETAILS:
            self.failures.append(result.detail if isinstance(result, CheckResult) else (detail or {}))

    def to_json(self) -> dict:
        data = {
            'check': self.check,
            'samples': self.samples,
            'passes': self.passes,
            'failures': self.failures,
            'status': 'pass' if self.passed else 'fail',
        }
        if self.extra:
            data['extra'] = self.extra
        return data


@dataclass
class ReportDocument:
    """Everything one command produced, serialised with sorted keys."""
    example: int
    command: str
    seed: Optional[int] = None
    generator: str = GENERATOR
    checks: list[CheckSummary] = field(default_factory=list)
    fixtures: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    duration: Optional[float] = None

    @property
    def status(self) -> str:
        ok = all(c.passed for c in self.checks) and all(f['passed'] for f in self.fixtures)
        return 'pass' if ok else 'fail'

    def compare_fixture(self, name: str, expected, actual) -> bool:
        passed = expected == actual
        self.fixtures.append({
            'name': name,
            'expected': _jsonable(expected),
            'actual': _jsonable(actual),
            'passed': passed,
        })
        return passed

    def to_json(self) -> dict:
        data = {
            'example': self.example,
            'command': self.command,
            'seed': self.seed,
            'generator': self.generator,
            'status': self.status,
            'checks': [c.to_json() for c in self.checks],
            'fixtures': self.fixtures,
            'witnesses': self.witnesses,
            'results': self.results,
        }
        if self.duration is not None:
            data['duration_seconds'] = round(self.duration, 3)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def _jsonable(value):
    if isinstance(value, QLin):
        return value.to_json()
    if isinstance(value, (set, frozenset)):
        return sorted((_jsonable(v) for v in value), key=str)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# Sampling

def random_rational(rng: random.Random, bound: int) -> Fraction:
    """A multiple of 1/DENOMINATOR in [-bound, bound]."""
    return Fraction(rng.randint(-bound * DENOMINATOR, bound * DENOMINATOR), DENOMINATOR)


def random_suspension_point(g: CeilingFunction, rng: random.Random) -> SuspensionPoint:
    x = sample_point(g.system, rng)
    return SuspensionPoint(x, g(x) * Fraction(rng.randrange(DENOMINATOR), DENOMINATOR), g)


def floor_case(point) -> str:
    """Which of X0, X1, X1' a doubled-system point lies in."""
    if point.level is Level.UPPER:
        return "X1'"
    return 'X1' if point.symbol == point.system.doubled_label else 'X0'


class VerificationSuite:
    """Runs every check that applies to one example bundle."""

    def __init__(self, bundle: ExampleBundle, samples: int = DEFAULT_SAMPLES,
                 seed: int = DEFAULT_SEED, max_radius: int = DEFAULT_MAX_RADIUS,
                 log: Log = _silent):
        if samples < 1:
            raise ValueError(f"samples must be positive, got {samples}")
        if max_radius < 0:
            raise ValueError(f"max_radius must be non-negative, got {max_radius}")
        self.bundle = bundle
        self.samples = samples
        self.seed = seed
        self.max_radius = max_radius
        self.log = log
        self.rng = random.Random(seed)

    def _count(self, divisor: int) -> int:
        return max(1, self.samples // divisor)

    def run(self) -> ReportDocument:
        """Run every step in order and collect the summaries into one report."""
        report = ReportDocument(self.bundle.id, 'verify', self.seed)
        report.results['samples'] = self.samples
        report.results['max_radius'] = self.max_radius

        self._compare_fixtures(report)
        steps = [
            self._check_cocycle_additivity,
            self._check_flow_additivity,
            self._check_canonical,
            self._check_map_identity,
            self._check_commute,
            self._check_injectivity,
            self._check_locality,
            self._check_patch_round_trip,
        ]
        for step in steps:
            for summary in step(report):
                report.checks.append(summary)
                mark = '✓' if summary.passed else '✗'
                self.log(f"{mark} {summary.check}: {summary.passes}/{summary.samples}")
        return report

    # Fixtures

    def _compare_fixtures(self, report: ReportDocument) -> None:
        """Tile-length sets of both ceilings against the example's fixtures."""
        fixtures = self.bundle.fixtures
        for name, expected, actual in (
            ('g_values', fixtures.g_values, self.bundle.g.value_set()),
            ('h_values', fixtures.h_values, self.bundle.h.value_set()),
        ):
            ok = report.compare_fixture(name, expected, actual)
            self.log(f"{'✓' if ok else '✗'} fixture {name}")

    # Suspension algebra

    def _check_cocycle_additivity(self, report) -> Iterable[CheckSummary]:
        """g(x, n + m) = g(x, n) + g(T^n x, m)"""
        g = self.bundle.g
        summary = CheckSummary('cocycle_additivity')
        for _ in range(self._count(2)):
            x = sample_point(g.system, self.rng)
            n = self.rng.randint(-COCYCLE_RANGE, COCYCLE_RANGE)
            m = self.rng.randint(-COCYCLE_RANGE, COCYCLE_RANGE)
            lhs = cocycle(g, x, n + m)
            rhs = cocycle(g, x, n) + cocycle(g, advance(x, n), m)
            summary.record(lhs == rhs, {'rho': x.rho.to_json(), 'n': n, 'm': m})
        yield summary

    def _check_flow_additivity(self, report) -> Iterable[CheckSummary]:
        g = self.bundle.g
        summary = CheckSummary('flow_additivity')
        for _ in range(self._count(2)):
            sp = random_suspension_point(g, self.rng)
            u = QLin.rational(random_rational(self.rng, FLOW_RANGE))
            w = QLin.rational(random_rational(self.rng, FLOW_RANGE))
            ok = flow(flow(sp, u), w) == flow(sp, u + w)
            summary.record(ok, {'point': sp.to_json(), 'u': u.to_json(), 'w': w.to_json()})
        yield summary

    def _check_canonical(self, report) -> Iterable[CheckSummary]:
        """canonical(x, s) is reached from (x, s) in exactly floor_index(x, s) steps."""
        g = self.bundle.g
        summary = CheckSummary('canonical_equivalence')
        for _ in range(self._count(2)):
            x = sample_point(g.system, self.rng)
            s = QLin.rational(random_rational(self.rng, COMMUTE_RANGE))
            n = floor_index(g, x, s)
            c = canonical(g, x, s)
            witness = equivalent(g, (x, s), (c.base, c.height), abs(n) + 1)
            summary.record(witness == n, {'rho': x.rho.to_json(), 's': s.to_json(), 'n': n})
        yield summary

    # Map identities

    def _check_map_identity(self, report) -> Iterable[CheckSummary]:
        fmap = self.bundle.map
        if isinstance(fmap, SimpleMapSpec):
            yield from self._check_simple(fmap)
        else:
            spec = fmap.as_general() if isinstance(fmap, LocalSplitCode) else fmap
            yield from self._check_general(spec, report)

    def _check_simple(self, spec: SimpleMapSpec) -> Iterable[CheckSummary]:
        identity = CheckSummary('simple_identity')
        for _ in range(self.samples):
            identity.record(check_simple_identity(spec, sample_point(spec.g.system, self.rng)))
        yield identity

        transfer = CheckSummary('transfer_identity')
        for _ in range(self._count(5)):
            x = sample_point(spec.g.system, self.rng)
            transfer.record(check_transfer_identity(spec, x, self.rng.randint(-5, 5)))
        yield transfer

    def _check_general(self, spec: GeneralMapSpec, report: ReportDocument) -> Iterable[CheckSummary]:
        """The transfer equations at every sample, with the Example 5 floor tally."""
        cohom = CheckSummary('cohom')
        floors = CheckSummary('floor_index_equals_m')
        doubled = spec.g.system.is_doubled
        cases: dict[str, int] = {}
        observed: set[QLin] = set()
        for _ in range(self.samples):
            y = sample_point(spec.g.system, self.rng)
            result = check_cohom(spec, y)
            cohom.record(result)
            observed.add(QLin.from_json(result.detail['increment']))
            if doubled:
                case = floor_case(y)
                cases[case] = cases.get(case, 0) + 1
                m = 0 if case == 'X1' else 1
                floors.record(result.detail['floor_index'] == m, result.detail)

        increments = transfer_increments(spec, seed=self.seed)
        cohom.extra['increments_seen'] = f"{len(observed & increments)}/{len(increments)}"
        yield cohom
        if doubled:
            floors.extra['cases'] = dict(sorted(cases.items()))
            yield floors
        if self.bundle.fixtures.v_increments is not None:
            report.compare_fixture('v_increments', self.bundle.fixtures.v_increments, increments)

    # Flow commutation

    def _check_commute(self, report) -> Iterable[CheckSummary]:
        """Commutation with the flow; every fifth time is pushed past the top of its tile."""
        fmap, g = self.bundle.map, self.bundle.g
        summary = CheckSummary('commute')
        crossings = 0
        for i in range(self._count(2)):
            sp = random_suspension_point(g, self.rng)
            if i % 5 == 0:
                # Just past the top of the current tile.
                u = g(sp.base) - sp.height + Fraction(1, DENOMINATOR)
            else:
                u = QLin.rational(random_rational(self.rng, COMMUTE_RANGE))
            if floor_index(g, sp.base, sp.height + u) != 0:
                crossings += 1
            summary.record(check_commute(fmap, sp, u))
        summary.extra['crossings'] = crossings
        yield summary

        required = self.required_crossings()
        coverage = CheckSummary('commute_crossings')
        coverage.record(crossings >= required, {'crossings': crossings, 'required': required})
        coverage.extra.update({'crossings': crossings, 'required': required})
        yield coverage

    def required_crossings(self) -> int:
        """MIN_CROSSINGS at the default sample count, scaled down for smaller runs."""
        return max(1, MIN_CROSSINGS * self.samples // DEFAULT_SAMPLES)

    # Injectivity

    def _check_injectivity(self, report) -> Iterable[CheckSummary]:
        fixtures = self.bundle.fixtures
        if fixtures.injective:
            yield self._injective_pairs()
        if fixtures.two_to_one:
            yield self._collapsing_pairs()

    def _injective_pairs(self) -> CheckSummary:
        """Equivalent images must come from equivalent sources."""
        fmap, g = self.bundle.map, self.bundle.g
        summary = CheckSummary('injective_pair')
        for _ in range(self._count(5)):
            a = random_suspension_point(g, self.rng)
            b = random_suspension_point(g, self.rng)
            summary.record(check_injective_pair(fmap, a, b, INJECTIVITY_BOUND))
        return summary

    def _collapsing_pairs(self) -> CheckSummary:
        """[x(ρ), 1/2] and [x(ρ + 1/2), 0] share an image under ρ -> 2ρ."""
        fmap, g = self.bundle.map, self.bundle.g
        system = g.system
        half = Fraction(1, 2)
        summary = CheckSummary('pair_collapse')
        for _ in range(self._count(5)):
            while True:
                rho = sample_generic_rho(system, self.rng)
                if rho < half and genericity_check(rho + half, system) is None:
                    break
            a = SuspensionPoint(system.point(rho), QLin.rational(half), g)
            b = SuspensionPoint(system.point(rho + half), ZERO, g)
            summary.record(check_pair_collapse(fmap, a, b, INJECTIVITY_BOUND))
        return summary

    # Locality

    def _check_locality(self, report: ReportDocument) -> Iterable[CheckSummary]:
        """One witness search per radius 0..max_radius; local maps must yield none."""
        if self.bundle.source.is_doubled:
            return
        expect_local = self.bundle.fixtures.local
        summary = CheckSummary('locality')
        for r in range(self.max_radius + 1):
            witness = locality_witness(self.bundle.map, r, seed=self.seed + r)
            if witness is not None:
                report.witnesses.append(witness.to_json())
            if expect_local:
                summary.record(witness is None, {'radius': r})
            else:
                summary.record(_valid_witness(witness), {'radius': r})
        yield summary

    # Patches

    def _check_patch_round_trip(self, report) -> Iterable[CheckSummary]:
        """Example 4 only: split then merge is the identity, and the split patch matches the image."""
        if not isinstance(self.bundle.map, LocalSplitCode):
            return
        fmap, g = self.bundle.map, self.bundle.g
        round_trip = CheckSummary('patch_round_trip')
        image = CheckSummary('split_matches_image')
        for _ in range(self._count(10)):
            sp = random_suspension_point(g, self.rng)
            L = QLin.rational(Fraction(self.rng.randint(2 * DENOMINATOR, 10 * DENOMINATOR), DENOMINATOR))
            p = patch(sp, L)
            split = split_patch(p)
            ok = merge_patch(split) == p and split.total_length() == p.total_length()
            round_trip.record(ok, {'point': sp.to_json(), 'L': L.to_json()})

            q = patch(fmap.apply(sp), L)
            lo, hi = -L + 1, L - 1
            image.record(_inside(split, lo, hi) == _inside(q, lo, hi),
                         {'point': sp.to_json(), 'L': L.to_json()})
        yield round_trip
        yield image


def _valid_witness(witness: Optional[Witness]) -> bool:
    return witness is not None and (witness.image_gap > ZERO or witness.labels_differ)


def _inside(p, lo: QLin, hi: QLin) -> tuple:
    return tuple(t for t in p.tiles if t.left >= lo and t.right <= hi)


# Other commands

def witness_report(bundle: ExampleBundle, radius: int, probes: int = 200,
                   seed: int = DEFAULT_SEED) -> ReportDocument:
    report = ReportDocument(bundle.id, 'witness', seed)
    witness = locality_witness(bundle.map, radius, probes, seed)
    report.results['radius'] = radius
    report.results['probes'] = probes
    report.results['witness'] = None if witness is None else witness.to_json()
    if witness is not None:
        report.witnesses.append(witness.to_json())
    report.compare_fixture('local', bundle.fixtures.local, witness is None)
    return report


def coincidence_family(coincidences, lengths_a: list[QLin], lengths_b: list[QLin],
                       eta2: QLin) -> str:
    """'empty', 'pure_eta2' when every coincidence uses η₂ tiles alone, else 'mixed'."""
    if not coincidences:
        return 'empty'

    def pure(coeffs, lengths):
        return all(k == 0 or q == eta2 for k, q in zip(coeffs, lengths))

    if all(pure(c.left, lengths_a) and pure(c.right, lengths_b) for c in coincidences):
        return 'pure_eta2'
    return 'mixed'


def lengths_report(bundle: ExampleBundle, bound: int) -> ReportDocument:
    """Scan integer combinations of tile lengths up to the bound and classify what coincides."""
    report = ReportDocument(bundle.id, 'lengths')
    lengths_a, lengths_b = bundle.scan_lengths()
    found = length_coincidence_scan(lengths_a, lengths_b, bound)
    family = coincidence_family(found, lengths_a, lengths_b, bundle.parameters.get('eta2'))
    report.results.update({
        'bound': bound,
        'lengths_source': [q.to_json() for q in lengths_a],
        'lengths_target': [q.to_json() for q in lengths_b],
        'coincidences': [c.to_json() for c in found],
        'family': family,
    })
    if bundle.fixtures.coincidences is not None:
        report.compare_fixture('coincidences', bundle.fixtures.coincidences, family)
    return report
