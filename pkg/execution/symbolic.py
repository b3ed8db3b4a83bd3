#!/usr/bin/env python3
"""
Rotation-coded subshifts.

Points are stored by their circle coordinate rho in [0, 1) and, for doubled
(induced) systems, a floor level. Symbols are read on demand by locating the
rotated coordinate in the coding partition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Optional, Sequence

from execution.exactreal import (
    ONE, ZERO, QLin, ql_enclose, ql_frac, qmax, qmin,
    rational_between, starting_precision,
)

Symbol = int
Word = tuple[Symbol, ...]

SAMPLE_DENOMINATOR = 10**6


class BoundaryHit(ValueError):
    """A rotated coordinate landed exactly on a partition boundary."""

    def __init__(self, rho: QLin, n: int, boundary: QLin):
        self.rho = rho
        self.n = n
        self.boundary = boundary
        super().__init__(f"Orbit of {rho} hits boundary {boundary} at step {n}")


class Level(str, Enum):
    GROUND = 'ground'
    UPPER = 'upper'


@dataclass(frozen=True, slots=True)
class Cell:
    label: Symbol
    left: QLin
    right: QLin

    @property
    def length(self) -> QLin:
        return self.right - self.left

    def to_json(self) -> dict:
        return {'label': self.label, 'left': self.left.to_json(), 'right': self.right.to_json()}


@dataclass(frozen=True, slots=True)
class Arc:
    """Half-open circle interval [left, right) inside [0, 1)."""
    left: QLin
    right: QLin

    @property
    def length(self) -> QLin:
        return self.right - self.left

    def contains(self, rho: QLin) -> bool:
        return self.left <= rho < self.right

    def to_json(self) -> dict:
        return {'left': self.left.to_json(), 'right': self.right.to_json()}


@dataclass(frozen=True, slots=True)
class Partition:
    cells: tuple[Cell, ...]

    def __post_init__(self):
        if not self.cells:
            raise ValueError("Partition needs at least one cell")
        if self.cells[0].left != ZERO or self.cells[-1].right != ONE:
            raise ValueError("Partition cells must cover [0, 1)")
        for cell in self.cells:
            if not cell.left < cell.right:
                raise ValueError(f"Empty cell [{cell.left}, {cell.right})")
        for a, b in zip(self.cells, self.cells[1:]):
            if a.right != b.left:
                raise ValueError(f"Cells do not abut: {a.right} vs {b.left}")

    @classmethod
    def from_breaks(cls, breaks: Sequence[QLin | Fraction | int],
                    labels: Sequence[Symbol]) -> Partition:
        """Cells [b_i, b_{i+1}) with b_0 = 0 and a final right end of 1."""
        points = [QLin.coerce(b) for b in breaks] + [ONE]
        if len(labels) != len(points) - 1:
            raise ValueError("Need one label per cell")
        return cls(tuple(Cell(label, points[i], points[i + 1]) for i, label in enumerate(labels)))

    @property
    def boundaries(self) -> tuple[QLin, ...]:
        return tuple(cell.left for cell in self.cells)

    @property
    def labels(self) -> frozenset[Symbol]:
        return frozenset(cell.label for cell in self.cells)

    def locate(self, rho: QLin, n: int = 0) -> int:
        for index, cell in enumerate(self.cells):
            if rho == cell.left:
                raise BoundaryHit(rho, n, cell.left)
            if rho < cell.right:
                return index
        raise ValueError(f"{rho} is outside [0, 1)")

    def refine(self, points: Iterable[QLin | Fraction]) -> Partition:
        cells = list(self.cells)
        for point in points:
            point = QLin.coerce(point)
            split = []
            for cell in cells:
                if cell.left < point < cell.right:
                    split.append(Cell(cell.label, cell.left, point))
                    split.append(Cell(cell.label, point, cell.right))
                else:
                    split.append(cell)
            cells = split
        return Partition(tuple(cells))

    def to_json(self) -> list[dict]:
        return [cell.to_json() for cell in self.cells]


@dataclass(frozen=True, slots=True)
class SubshiftSystem:
    alpha: QLin
    partition: Partition
    doubled_label: Optional[Symbol] = None
    name: str = field(default='', compare=False)

    def __post_init__(self):
        if self.alpha.is_rational():
            raise ValueError(f"Rotation angle must be irrational, got {self.alpha}")
        if self.doubled_label is not None and self.doubled_label not in self.partition.labels:
            raise ValueError(f"Doubled label {self.doubled_label} is not a partition label")

    @property
    def kind(self) -> str:
        return 'plain' if self.doubled_label is None else 'doubled'

    @property
    def is_doubled(self) -> bool:
        return self.doubled_label is not None

    def plain(self) -> SubshiftSystem:
        return SubshiftSystem(self.alpha, self.partition, None, self.name)

    def point(self, rho: QLin | Fraction | int, level: Level = Level.GROUND) -> SymbolicPoint:
        return SymbolicPoint(self, QLin.coerce(rho), level)

    def levels_of(self, cell_index: int) -> tuple[Level, ...]:
        if self.is_doubled and self.partition.cells[cell_index].label == self.doubled_label:
            return (Level.GROUND, Level.UPPER)
        return (Level.GROUND,)

    def to_json(self) -> dict:
        return {
            'name': self.name,
            'alpha': self.alpha.to_json(),
            'cells': self.partition.to_json(),
            'kind': self.kind,
            'doubled_label': self.doubled_label,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> SubshiftSystem:
        cells = tuple(
            Cell(c['label'], QLin.from_json(c['left']), QLin.from_json(c['right']))
            for c in data['cells']
        )
        doubled = data.get('doubled_label') if data.get('kind', 'plain') == 'doubled' else None
        return cls(QLin.from_json(data['alpha']), Partition(cells), doubled, data.get('name', ''))


@dataclass(frozen=True, slots=True)
class SymbolicPoint:
    system: SubshiftSystem
    rho: QLin
    level: Level = Level.GROUND

    def __post_init__(self):
        if not ZERO <= self.rho < ONE:
            raise ValueError(f"Circle coordinate {self.rho} is outside [0, 1)")
        if self.level is Level.UPPER:
            if not self.system.is_doubled:
                raise ValueError("Upper floor exists only in doubled systems")
            label = self.system.partition.cells[self.system.partition.locate(self.rho)].label
            if label != self.system.doubled_label:
                raise ValueError(f"No upper floor over symbol {label}")

    @property
    def cell_index(self) -> int:
        return self.system.partition.locate(self.rho)

    @property
    def symbol(self) -> Symbol:
        return self.system.partition.cells[self.cell_index].label

    def same_place(self, other: SymbolicPoint) -> bool:
        """Exact rho and level match, ignoring system identity."""
        return self.rho == other.rho and self.level is other.level

    def to_json(self) -> dict:
        return {'rho': self.rho.to_json(), 'level': self.level.value}


def rotate(rho: QLin, n: int, alpha: QLin) -> QLin:
    return ql_frac(rho + alpha * n)


def shift(point: SymbolicPoint, n: int = 1) -> SymbolicPoint:
    """T^n on a plain system."""
    if point.system.is_doubled:
        raise ValueError("shift applies to plain systems; use step_S")
    return SymbolicPoint(point.system, rotate(point.rho, n, point.system.alpha))


def step_S(point: SymbolicPoint) -> SymbolicPoint:
    system = point.system
    if not system.is_doubled:
        raise ValueError("step_S applies to doubled systems")
    if point.level is Level.UPPER:
        return SymbolicPoint(system, rotate(point.rho, 1, system.alpha))
    if point.symbol == system.doubled_label:
        return SymbolicPoint(system, point.rho, Level.UPPER)
    return SymbolicPoint(system, rotate(point.rho, 1, system.alpha))


def step_S_inverse(point: SymbolicPoint) -> SymbolicPoint:
    system = point.system
    if not system.is_doubled:
        raise ValueError("step_S_inverse applies to doubled systems")
    if point.level is Level.UPPER:
        return SymbolicPoint(system, point.rho)
    previous = SymbolicPoint(system, rotate(point.rho, -1, system.alpha))
    if previous.symbol == system.doubled_label:
        return SymbolicPoint(system, previous.rho, Level.UPPER)
    return previous


def advance(point: SymbolicPoint, n: int) -> SymbolicPoint:
    """n steps of the system map: T for plain systems, S for doubled ones."""
    if not point.system.is_doubled:
        return shift(point, n) if n else point
    step = step_S if n > 0 else step_S_inverse
    for _ in range(abs(n)):
        point = step(point)
    return point


def symbol_at(point: SymbolicPoint, n: int) -> Symbol:
    system = point.system
    if not system.is_doubled:
        rho = rotate(point.rho, n, system.alpha)
        try:
            return system.partition.cells[system.partition.locate(rho, n)].label
        except BoundaryHit as e:
            raise BoundaryHit(point.rho, n, e.boundary) from None
    try:
        return advance(point, n).symbol
    except BoundaryHit as e:
        raise BoundaryHit(point.rho, n, e.boundary) from None


def window(point: SymbolicPoint, r: int) -> Word:
    if r < 0:
        raise ValueError(f"Window radius must be non-negative, got {r}")
    return tuple(symbol_at(point, n) for n in range(-r, r + 1))


@dataclass(frozen=True, slots=True)
class BlockCode:
    """1-block code whose circle semantics is rho -> frac(circle_factor * rho)."""
    table: Mapping[Symbol, Symbol]
    target: SubshiftSystem
    circle_factor: int = 1

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.table.items())), self.target, self.circle_factor))

    def check_total(self, source: SubshiftSystem) -> None:
        missing = source.partition.labels - set(self.table)
        if missing:
            raise ValueError(f"Block code is not defined on symbols {sorted(missing)}")

    def translate_word(self, word: Sequence[Symbol]) -> Word:
        return tuple(self.table[s] for s in word)

    def apply(self, point: SymbolicPoint) -> SymbolicPoint:
        return block_code_apply(self, point)

    def describe(self) -> dict:
        return {
            'type': 'block_code',
            'table': {str(k): v for k, v in sorted(self.table.items())},
            'circle_factor': self.circle_factor,
        }


def block_code_apply(code: BlockCode, point: SymbolicPoint) -> SymbolicPoint:
    if point.system.is_doubled:
        raise ValueError("Block codes apply to plain systems")
    return SymbolicPoint(code.target, ql_frac(point.rho * code.circle_factor))


def identity_code(source: SubshiftSystem, target: Optional[SubshiftSystem] = None) -> BlockCode:
    return BlockCode({s: s for s in source.partition.labels}, target or source)


@dataclass(frozen=True, slots=True)
class CollapseCode:
    """Forget the floor of a doubled-system point (collapses each 11 to 1)."""
    target: SubshiftSystem

    def apply(self, point: SymbolicPoint) -> SymbolicPoint:
        return collapse_pi(point, self.target)

    def describe(self) -> dict:
        return {'type': 'collapse'}


def collapse_pi(y: SymbolicPoint, target: Optional[SubshiftSystem] = None) -> SymbolicPoint:
    if not y.system.is_doubled:
        raise ValueError("collapse_pi applies to doubled systems")
    return SymbolicPoint(target or y.system.plain(), y.rho)


@dataclass(frozen=True, slots=True)
class GroundEmbedding:
    """Place a plain point on the ground floor of a doubled system over the same rotation."""
    target: SubshiftSystem

    def apply(self, point: SymbolicPoint) -> SymbolicPoint:
        if point.system.is_doubled:
            raise ValueError("GroundEmbedding applies to plain systems")
        return SymbolicPoint(self.target, point.rho, Level.GROUND)

    def describe(self) -> dict:
        return {'type': 'ground_embedding'}


# Cylinders

_by_value = cmp_to_key(lambda a, b: (b < a) - (a < b))


def _sort_qlin(points: Iterable[QLin]) -> list[QLin]:
    return sorted(set(points), key=_by_value)


def _preimage(cell: Cell, i: int, alpha: QLin) -> list[Arc]:
    """{rho : frac(rho + i*alpha) in cell} as arcs of [0, 1)."""
    start = ql_frac(cell.left - alpha * i)
    end = start + cell.length
    if end <= ONE:
        return [Arc(start, end)]
    return [Arc(start, ONE), Arc(ZERO, end - ONE)]


def _intersect(a: list[Arc], b: list[Arc]) -> list[Arc]:
    out = []
    for x in a:
        for y in b:
            lo, hi = qmax(x.left, y.left), qmin(x.right, y.right)
            if lo < hi:
                out.append(Arc(lo, hi))
    return out


def _merge(arcs: list[Arc]) -> list[Arc]:
    arcs = sorted(arcs, key=lambda arc: _by_value(arc.left))
    merged: list[Arc] = []
    for arc in arcs:
        if merged and merged[-1].right == arc.left:
            merged[-1] = Arc(merged[-1].left, arc.right)
        else:
            merged.append(arc)
    return merged


def cylinder(word: Sequence[Symbol], system: SubshiftSystem,
             offset: Optional[int] = None) -> list[Arc]:
    """Exact set of rho whose symbols at offset, offset+1, ... spell `word`."""
    if system.is_doubled:
        raise ValueError("Cylinders are computed on plain systems")
    if offset is None:
        offset = -((len(word) - 1) // 2)
    current = [Arc(ZERO, ONE)]
    for i, label in enumerate(word, start=offset):
        pre: list[Arc] = []
        for cell in system.partition.cells:
            if cell.label == label:
                pre.extend(_preimage(cell, i, system.alpha))
        current = _intersect(current, pre)
        if not current:
            return []
    return _merge(current)


def cylinder_arcs(system: SubshiftSystem, r: int) -> list[tuple[Word, Arc]]:
    """Every word realised at radius r with the arcs it occupies, finest first."""
    if system.is_doubled:
        raise ValueError("Cylinders are computed on plain systems")
    cuts = [ql_frac(b - system.alpha * i)
            for b in system.partition.boundaries for i in range(-r, r + 1)]
    points = _sort_qlin(cuts + [ZERO]) + [ONE]
    pieces = []
    for left, right in zip(points, points[1:]):
        arc = Arc(left, right)
        probe = SymbolicPoint(system, QLin.rational(rational_between(left, right)))
        pieces.append((window(probe, r), arc))
    return pieces


# Genericity

@dataclass(frozen=True, slots=True)
class GenericityConflict:
    n: int
    boundary: QLin

    def to_json(self) -> dict:
        return {'n': self.n, 'boundary': self.boundary.to_json()}


def orbit_hit(rho0: QLin, alpha: QLin, boundary: QLin) -> Optional[int]:
    """The integer n with rho0 + n*alpha = boundary (mod 1), if any."""
    diff = boundary - rho0
    surd = next(i for i in range(1, 4) if alpha.coeffs[i] != 0)
    n = diff.coeffs[surd] / alpha.coeffs[surd]
    if n.denominator != 1:
        return None
    n = int(n)
    rest = diff - alpha * n
    if rest.is_rational() and rest.rational_part.denominator == 1:
        return n
    return None


def genericity_check(rho0: QLin, system: SubshiftSystem) -> Optional[GenericityConflict]:
    """None when the orbit of rho0 avoids every boundary, else the smallest-|n| conflict."""
    hits = []
    for boundary in system.partition.boundaries:
        n = orbit_hit(rho0, system.alpha, boundary)
        if n is not None:
            hits.append(GenericityConflict(n, boundary))
    if not hits:
        return None
    return min(hits, key=lambda c: (abs(c.n), c.n))


def sample_generic_rho(system: SubshiftSystem, rng: random.Random) -> QLin:
    while True:
        q = rng.randint(1, SAMPLE_DENOMINATOR)
        rho = QLin.rational(Fraction(rng.randrange(q), q))
        if genericity_check(rho, system) is None:
            return rho


def sample_in_arc(arc: Arc, system: SubshiftSystem, rng: random.Random) -> QLin:
    """A generic rational strictly inside the arc."""
    width = starting_precision()
    while True:
        lo = ql_enclose(arc.left, width).hi
        hi = ql_enclose(arc.right, width).lo
        if lo < hi:
            break
        width /= 16
    for _ in range(64):
        k = rng.randint(1, SAMPLE_DENOMINATOR - 1)
        rho = QLin.rational(lo + (hi - lo) * Fraction(k, SAMPLE_DENOMINATOR))
        if genericity_check(rho, system) is None:
            return rho
    raise ValueError(f"No generic sample found in [{arc.left}, {arc.right})")


def sample_point(system: SubshiftSystem, rng: random.Random) -> SymbolicPoint:
    """Generic point; on doubled systems the upper floor is drawn half the time over 1-cells."""
    point = SymbolicPoint(system, sample_generic_rho(system, rng))
    if system.is_doubled and point.symbol == system.doubled_label and rng.random() < 0.5:
        return SymbolicPoint(system, point.rho, Level.UPPER)
    return point
