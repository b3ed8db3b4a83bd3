#!/usr/bin/env python3
"""
Factor maps between suspension systems and the exact checks run against them.

A simple map sends [x, s] to [πx, 0](s + t(x)); a general map does the same
with a transfer v that is only required to satisfy the cohomological
equations. Every check returns a CheckResult carrying the exact values it
compared, so failures can be reported without re-running anything.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterator, Optional, Sequence, Union

from execution.exactreal import ONE, ZERO, QLin
from execution.suspension import (
    DEFAULT_EQUIVALENCE_BOUND, CeilingFunction, SuspensionPoint, Tile, TilePatch,
    canonical, cocycle, equivalent, floor_index, flow,
)
from execution.symbolic import (
    Arc, BlockCode, CollapseCode, GroundEmbedding, Level, Symbol, SymbolicPoint, Word,
    advance, cylinder, cylinder_arcs, sample_generic_rho, sample_in_arc, window,
)

SymbolMap = Union[BlockCode, CollapseCode, GroundEmbedding]

DEFAULT_PROBES = 200
INCREMENT_RADIUS = 2
HALF = QLin.rational(Fraction(1, 2))


# Transfer rules

@dataclass(frozen=True, slots=True)
class Rule:
    """Exactly evaluable transfer function: 'rho', 'rho_after_step' or 'constant'."""
    kind: str
    value: QLin = ZERO

    def __post_init__(self):
        if self.kind not in ('rho', 'rho_after_step', 'constant'):
            raise ValueError(f"Unknown rule: {self.kind}")

    @classmethod
    def rho(cls) -> Rule:
        return cls('rho')

    @classmethod
    def rho_after_step(cls) -> Rule:
        return cls('rho_after_step')

    @classmethod
    def constant(cls, value: QLin | int | Fraction) -> Rule:
        return cls('constant', QLin.coerce(value))

    def evaluate(self, point: SymbolicPoint, pi: SymbolMap) -> QLin:
        if self.kind == 'rho':
            return point.rho
        if self.kind == 'rho_after_step':
            return pi.apply(advance(point, 1)).rho
        return self.value

    def describe(self) -> dict:
        if self.kind == 'constant':
            return {'rule': 'constant', 'value': self.value.to_json()}
        return {'rule': self.kind}


# Maps

@dataclass(frozen=True, eq=False)
class SimpleMapSpec:
    pi: SymbolMap
    t: Rule
    g: CeilingFunction
    h: CeilingFunction
    name: str = ''

    def apply(self, sp: SuspensionPoint) -> SuspensionPoint:
        return apply_simple(self, sp)

    def describe(self) -> dict:
        return {'type': 'simple', 'pi': self.pi.describe(), 't': self.t.describe()}


@dataclass(frozen=True, eq=False)
class GeneralMapSpec:
    pi: SymbolMap
    v: Rule
    g: CeilingFunction
    h: CeilingFunction
    name: str = ''

    def apply(self, sp: SuspensionPoint) -> SuspensionPoint:
        return apply_general(self, sp)

    def describe(self) -> dict:
        return {'type': 'general', 'pi': self.pi.describe(), 'v': self.v.describe()}


@dataclass(frozen=True, eq=False)
class LocalSplitCode:
    """
    Radius-0 code that cuts every tile carrying `split_label` into its two floors.

    The image of [x, s] depends only on x0 and s: the ground floor of the
    target tile while s is below the ground length, the upper floor after.
    """
    g: CeilingFunction
    h: CeilingFunction
    name: str = ''

    def __post_init__(self):
        if not self.h.system.is_doubled or self.g.system.is_doubled:
            raise ValueError("LocalSplitCode maps a plain system into a doubled one")

    @property
    def split_label(self) -> Symbol:
        return self.h.system.doubled_label

    def apply(self, sp: SuspensionPoint) -> SuspensionPoint:
        ground = SymbolicPoint(self.h.system, sp.base.rho, Level.GROUND)
        if sp.base.symbol != self.split_label:
            return SuspensionPoint(ground, sp.height, self.h)
        offset = self.h(ground)
        if sp.height < offset:
            return SuspensionPoint(ground, sp.height, self.h)
        upper = SymbolicPoint(self.h.system, sp.base.rho, Level.UPPER)
        return canonical(self.h, upper, sp.height - offset)

    def as_general(self) -> GeneralMapSpec:
        return GeneralMapSpec(GroundEmbedding(self.h.system), Rule.constant(ZERO),
                              self.g, self.h, self.name)

    def describe(self) -> dict:
        return {'type': 'local_split', 'split_label': self.split_label, 'radius': 0}


FactorMap = Union[SimpleMapSpec, GeneralMapSpec, LocalSplitCode]


def apply_simple(spec: SimpleMapSpec, sp: SuspensionPoint) -> SuspensionPoint:
    x = sp.base
    return canonical(spec.h, spec.pi.apply(x), sp.height + spec.t.evaluate(x, spec.pi))


def apply_general(spec: GeneralMapSpec, sp: SuspensionPoint) -> SuspensionPoint:
    x = sp.base
    return canonical(spec.h, spec.pi.apply(x), sp.height + spec.v.evaluate(x, spec.pi))


# Checks

@dataclass(frozen=True)
class CheckResult:
    check: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {'check': self.check, 'passed': self.passed, 'detail': self.detail}


def check_simple_identity(spec: SimpleMapSpec, x: SymbolicPoint) -> CheckResult:
    """t(Tx) - t(x) = g(x) - h(πx)"""
    lhs = spec.t.evaluate(advance(x, 1), spec.pi) - spec.t.evaluate(x, spec.pi)
    rhs = spec.g(x) - spec.h(spec.pi.apply(x))
    return CheckResult('simple_identity', lhs == rhs, {
        'rho': x.rho.to_json(), 'lhs': lhs.to_json(), 'rhs': rhs.to_json(),
    })


def check_transfer_identity(spec: SimpleMapSpec, x: SymbolicPoint, d: int) -> CheckResult:
    """h(πx, d) - g(x, d) = t(x) - t(T^d x), the identity behind injectivity."""
    lhs = cocycle(spec.h, spec.pi.apply(x), d) - cocycle(spec.g, x, d)
    rhs = spec.t.evaluate(x, spec.pi) - spec.t.evaluate(advance(x, d), spec.pi)
    return CheckResult('transfer_identity', lhs == rhs, {
        'rho': x.rho.to_json(), 'd': d, 'lhs': lhs.to_json(), 'rhs': rhs.to_json(),
    })


def check_cohom(spec: GeneralMapSpec, y: SymbolicPoint) -> CheckResult:
    """
    Both cohomological equations at y, with the two floor-index terms kept:

        S_X^{n(πy, g(y)+v(y))} πy = S_X^{n(πSy, v(Sy))} πSy
        v(Sy) - v(y) = g(y) + h(πSy, n(πSy, v(Sy))) - h(πy, n(πy, g(y)+v(y)))
    """
    sy = advance(y, 1)
    py, psy = spec.pi.apply(y), spec.pi.apply(sy)
    vy, vsy = spec.v.evaluate(y, spec.pi), spec.v.evaluate(sy, spec.pi)
    gy = spec.g(y)

    n_here = floor_index(spec.h, py, gy + vy)
    n_next = floor_index(spec.h, psy, vsy)
    base_here, base_next = advance(py, n_here), advance(psy, n_next)
    bases_match = base_here.same_place(base_next)

    increment = vsy - vy
    expected = gy + cocycle(spec.h, psy, n_next) - cocycle(spec.h, py, n_here)

    detail = {
        'rho': y.rho.to_json(),
        'level': y.level.value,
        'symbol': y.symbol,
        'floor_index': n_here,
        'floor_index_next': n_next,
        'increment': increment.to_json(),
        'expected_increment': expected.to_json(),
    }
    if not bases_match:
        detail['bases'] = [base_here.to_json(), base_next.to_json()]
    return CheckResult('cohom', bases_match and increment == expected, detail)


def transfer_increments(spec: GeneralMapSpec, radius: int = INCREMENT_RADIUS,
                        seed: int = 0) -> frozenset[QLin]:
    """
    Every value v(Sy) - v(y) takes, from one generic sample per floor of each
    radius-`radius` cylinder arc. The rules only look one or two steps ahead,
    so the increment is constant on those arcs.
    """
    system = spec.g.system
    rng = random.Random(seed)
    found: set[QLin] = set()
    for _, arc in cylinder_arcs(system.plain(), radius):
        rho = sample_in_arc(arc, system, rng)
        for level in system.levels_of(system.partition.locate(rho)):
            y = SymbolicPoint(system, rho, level)
            found.add(spec.v.evaluate(advance(y, 1), spec.pi) - spec.v.evaluate(y, spec.pi))
    return frozenset(found)


def check_commute(fmap: FactorMap, sp: SuspensionPoint, u: QLin) -> CheckResult:
    lhs = fmap.apply(flow(sp, u))
    rhs = flow(fmap.apply(sp), u)
    detail = {'point': sp.to_json(), 'u': u.to_json()}
    if lhs != rhs:
        detail.update({'lhs': lhs.to_json(), 'rhs': rhs.to_json()})
    return CheckResult('commute', lhs == rhs, detail)


def _image_and_source_witnesses(fmap: FactorMap, a: SuspensionPoint, b: SuspensionPoint,
                                bound: int) -> tuple[Optional[int], Optional[int]]:
    ia, ib = fmap.apply(a), fmap.apply(b)
    image = equivalent(fmap.h, (ia.base, ia.height), (ib.base, ib.height), bound)
    source = equivalent(fmap.g, (a.base, a.height), (b.base, b.height), bound)
    return image, source


def check_injective_pair(fmap: FactorMap, a: SuspensionPoint, b: SuspensionPoint,
                         bound: int = DEFAULT_EQUIVALENCE_BOUND) -> CheckResult:
    """Equivalent images must come from equivalent sources."""
    image, source = _image_and_source_witnesses(fmap, a, b, bound)
    return CheckResult('injective_pair', image is None or source is not None, {
        'a': a.to_json(), 'b': b.to_json(), 'image_witness': image, 'source_witness': source,
    })


def check_pair_collapse(fmap: FactorMap, a: SuspensionPoint, b: SuspensionPoint,
                        bound: int = DEFAULT_EQUIVALENCE_BOUND) -> CheckResult:
    """Inequivalent sources with equivalent images, as for a two-to-one map."""
    image, source = _image_and_source_witnesses(fmap, a, b, bound)
    return CheckResult('pair_collapse', image is not None and source is None, {
        'a': a.to_json(), 'b': b.to_json(), 'image_witness': image, 'source_witness': source,
    })


def extract_pi_v(fmap: FactorMap, x: SymbolicPoint) -> tuple[SymbolicPoint, QLin]:
    image = fmap.apply(SuspensionPoint(x, ZERO, fmap.g))
    return image.base, image.height


# Locality

@dataclass(frozen=True)
class Witness:
    rho_a: QLin
    rho_b: QLin
    radius: int
    image_gap: QLin
    word: Word = ()
    labels: tuple[Symbol, Symbol] = (0, 0)

    @property
    def labels_differ(self) -> bool:
        return self.labels[0] != self.labels[1]

    def to_json(self) -> dict:
        return {
            'rho_a': self.rho_a.to_json(),
            'rho_b': self.rho_b.to_json(),
            'radius': self.radius,
            'image_gap': self.image_gap.to_json(),
            'word': list(self.word),
            'labels': list(self.labels),
            'labels_differ': self.labels_differ,
        }


def locality_witness(fmap: FactorMap, r: int, probes: int = DEFAULT_PROBES,
                     seed: int = 0) -> Optional[Witness]:
    """
    Two generic points sharing their radius-r window whose images at the
    origin differ in height or central label, or None if every probe agrees.
    """
    if r < 0:
        raise ValueError(f"Radius must be non-negative, got {r}")
    source = fmap.g.system
    if source.is_doubled:
        raise ValueError("Locality witnesses are searched on plain source systems")

    rng = random.Random(seed)
    arcs: Optional[list[tuple[Word, Arc]]] = None
    for probe in range(probes):
        if probe == 0:
            # First probe: the cylinder around a random point's own window.
            rho_a = sample_generic_rho(source, rng)
            word = window(source.point(rho_a), r)
            arc = next(a for a in cylinder(word, source, -r) if a.contains(rho_a))
        else:
            if arcs is None:
                arcs = cylinder_arcs(source, r)
            word, arc = arcs[rng.randrange(len(arcs))]
            rho_a = sample_in_arc(arc, source, rng)
        rho_b = sample_in_arc(arc, source, rng)
        if rho_a == rho_b:
            continue
        ia = fmap.apply(SuspensionPoint(source.point(rho_a), ZERO, fmap.g))
        ib = fmap.apply(SuspensionPoint(source.point(rho_b), ZERO, fmap.g))
        if ia.height != ib.height or ia.base.symbol != ib.base.symbol:
            return Witness(rho_a, rho_b, r, abs(ia.height - ib.height), word,
                           (ia.base.symbol, ib.base.symbol))
    return None


# Tile-length coincidences

@dataclass(frozen=True, slots=True)
class Coincidence:
    left: tuple[int, ...]
    right: tuple[int, ...]
    value: QLin

    def to_json(self) -> dict:
        return {'left': list(self.left), 'right': list(self.right), 'value': self.value.to_json()}


def _integer_vectors(lengths: Sequence[QLin], scale: int) -> list[tuple[int, ...]]:
    return [tuple(int(c * scale) for c in q.coeffs) for q in lengths]


def _combinations(vectors: Sequence[tuple[int, ...]],
                  bound: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every (coefficients, sum vector) with non-negative coefficients summing to <= bound."""
    coeffs: list[int] = []

    def walk(i: int, remaining: int, total: tuple[int, ...]):
        if i == len(vectors):
            yield tuple(coeffs), total
            return
        vec = vectors[i]
        current = total
        for k in range(remaining + 1):
            coeffs.append(k)
            yield from walk(i + 1, remaining - k, current)
            coeffs.pop()
            current = tuple(a + b for a, b in zip(current, vec))

    yield from walk(0, bound, (0, 0, 0, 0))


def length_coincidence_scan(lengths_a: Sequence[QLin], lengths_b: Sequence[QLin],
                            bound: int) -> list[Coincidence]:
    """All non-trivial pairs of combinations with exactly equal sums, coefficient sums <= bound."""
    if bound < 1:
        raise ValueError(f"Scan bound must be at least 1, got {bound}")
    scale = lcm(*(c.denominator for q in (*lengths_a, *lengths_b) for c in q.coeffs))
    vec_a = _integer_vectors(lengths_a, scale)
    vec_b = _integer_vectors(lengths_b, scale)

    # Hash the side with fewer combinations, stream the other.
    swap = comb(bound + len(vec_b), len(vec_b)) < comb(bound + len(vec_a), len(vec_a))
    hashed, streamed = (vec_b, vec_a) if swap else (vec_a, vec_b)

    table: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for coeffs, total in _combinations(hashed, bound):
        table.setdefault(total, []).append(coeffs)

    found = []
    for coeffs, total in _combinations(streamed, bound):
        for partner in table.get(total, ()):
            if not any(coeffs) and not any(partner):
                continue
            left, right = (coeffs, partner) if swap else (partner, coeffs)
            value = QLin(tuple(Fraction(c, scale) for c in total))
            found.append(Coincidence(left, right, value))
    return sorted(found, key=lambda c: (c.left, c.right))


# Splitting and merging patches

class MergeParity(ValueError):
    """An interior run of half-tiles cannot be paired."""

    def __init__(self, start: int, length: int):
        self.start = start
        self.length = length
        super().__init__(f"Interior run of {length} half-tiles at tile {start} has odd length")


def split_patch(patch: TilePatch, label: Symbol = 1) -> TilePatch:
    """Cut every length-1 tile carrying `label` into two half tiles."""
    tiles = []
    for tile in patch.tiles:
        if tile.label == label and tile.length == ONE:
            tiles.append(Tile(label, HALF, tile.left, tile.index))
            tiles.append(Tile(label, HALF, tile.left + HALF, tile.index))
        else:
            tiles.append(tile)
    return TilePatch(tuple(tiles))


def merge_patch(patch: TilePatch, label: Symbol = 1) -> TilePatch:
    """
    Join adjacent half tiles carrying `label` back into whole tiles.

    Runs touching an end of the patch may have lost their partner; the
    unpaired outermost half tile is dropped. Interior runs must be even.
    """
    tiles = patch.tiles
    out: list[Tile] = []
    i = 0
    while i < len(tiles):
        tile = tiles[i]
        if tile.label != label or tile.length != HALF:
            out.append(tile)
            i += 1
            continue
        j = i
        while j < len(tiles) and tiles[j].label == label and tiles[j].length == HALF:
            j += 1
        run = list(tiles[i:j])
        if len(run) % 2:
            if i == 0:
                run = run[1:]
            elif j == len(tiles):
                run = run[:-1]
            else:
                raise MergeParity(i, len(run))
        for a, b in zip(run[::2], run[1::2]):
            out.append(Tile(label, a.length + b.length, a.left, a.index))
        i = j
    return TilePatch(tuple(out))
