#!/usr/bin/env python3
"""
Flows under functions over rotation-coded subshifts.

A point of the suspension is kept in canonical form [x, s] with
0 <= s < g(x). The flow, the cocycle g(x, n) and the floor index n(x, s)
are computed exactly by walking the orbit of x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from execution.exactreal import ZERO, QLin
from execution.symbolic import (
    BoundaryHit, Level, SubshiftSystem, Symbol, SymbolicPoint, advance,
)

CellKey = tuple[int, Level]

DEFAULT_EQUIVALENCE_BOUND = 64


@dataclass(frozen=True, eq=False)
class CeilingFunction:
    """Positive tile lengths indexed by (partition cell, floor level)."""
    system: SubshiftSystem
    values: Mapping[CellKey, QLin]
    name: str = ''

    def __post_init__(self):
        for index in range(len(self.system.partition.cells)):
            for level in self.system.levels_of(index):
                if (index, level) not in self.values:
                    raise ValueError(f"Ceiling {self.name!r} undefined on cell {index} ({level.value})")
        for key, value in self.values.items():
            if not value > ZERO:
                raise ValueError(f"Ceiling {self.name!r} is not positive on {key}: {value}")

    def __call__(self, point: SymbolicPoint) -> QLin:
        return ceiling_eval(self, point)

    def value_set(self) -> frozenset[QLin]:
        return frozenset(self.values.values())

    def min_value(self) -> QLin:
        return min(self.values.values())

    def to_json(self) -> list[dict]:
        return [
            {'cell': index, 'level': level.value, 'value': value.to_json()}
            for (index, level), value in sorted(self.values.items(), key=lambda kv: (kv[0][0], kv[0][1].value))
        ]


def constant_ceiling(system: SubshiftSystem, value: QLin, name: str = '') -> CeilingFunction:
    values = {
        (index, level): value
        for index in range(len(system.partition.cells))
        for level in system.levels_of(index)
    }
    return CeilingFunction(system, values, name)


def ceiling_eval(g: CeilingFunction, point: SymbolicPoint) -> QLin:
    """Look up g on the cell and floor of the point."""
    return g.values[(point.cell_index, point.level)]


def _walk(g: CeilingFunction, point: SymbolicPoint, n: int) -> tuple[QLin, SymbolicPoint]:
    """(g(x, n), T^n x)"""
    origin, total, k = point, ZERO, 0
    try:
        if n >= 0:
            for k in range(n):
                total += g(point)
                point = advance(point, 1)
        else:
            for k in range(-1, n - 1, -1):
                point = advance(point, -1)
                total -= g(point)
    except BoundaryHit as e:
        raise BoundaryHit(origin.rho, k, e.boundary) from None
    return total, point


def cocycle(g: CeilingFunction, point: SymbolicPoint, n: int) -> QLin:
    """g(x, n): the sum of n tile lengths forward from x, or minus the |n| lengths behind it."""
    return _walk(g, point, n)[0]


def _locate(g: CeilingFunction, point: SymbolicPoint,
            s: QLin) -> tuple[int, QLin, SymbolicPoint]:
    """(n, g(x, n), T^n x) with g(x, n) <= s < g(x, n + 1)."""
    origin, n, total = point, 0, ZERO
    try:
        if s >= ZERO:
            while True:
                step = g(point)
                if total + step > s:
                    return n, total, point
                total += step
                point = advance(point, 1)
                n += 1
        while total > s:
            n -= 1
            point = advance(point, -1)
            total -= g(point)
    except BoundaryHit as e:
        raise BoundaryHit(origin.rho, n, e.boundary) from None
    return n, total, point


def floor_index(g: CeilingFunction, point: SymbolicPoint, s: QLin) -> int:
    """The n with g(x, n) <= s < g(x, n + 1)."""
    return _locate(g, point, s)[0]


@dataclass(frozen=True)
class SuspensionPoint:
    """Canonical point [x, s] with 0 <= s < g(x)."""
    base: SymbolicPoint
    height: QLin
    ceiling: CeilingFunction = field(compare=False, repr=False)

    def __post_init__(self):
        if not ZERO <= self.height < self.ceiling(self.base):
            raise ValueError(f"[x, {self.height}] is not canonical: need 0 <= s < g(x)")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuspensionPoint):
            return NotImplemented
        return self.base.same_place(other.base) and self.height == other.height

    def __hash__(self) -> int:
        return hash((self.base.rho, self.base.level, self.height))

    def to_json(self) -> dict:
        return {'base': self.base.to_json(), 'height': self.height.to_json()}


def canonical(g: CeilingFunction, x: SymbolicPoint, s: QLin) -> SuspensionPoint:
    """The canonical representative of [x, s] for any real s."""
    _, total, base = _locate(g, x, s)
    return SuspensionPoint(base, s - total, g)


def flow(sp: SuspensionPoint, u: QLin) -> SuspensionPoint:
    """Move up the flow line by u (negative u moves down)."""
    return canonical(sp.ceiling, sp.base, sp.height + u)


def equivalent(g: CeilingFunction, a: tuple[SymbolicPoint, QLin],
               b: tuple[SymbolicPoint, QLin],
               bound: int = DEFAULT_EQUIVALENCE_BOUND) -> Optional[int]:
    """Witness n with T^n x = x' and s' = s - g(x, n), searching |n| <= bound."""
    (x, s), (x2, s2) = a, b
    if x.same_place(x2) and s2 == s:
        return 0
    forward, backward = x, x
    total_f, total_b = ZERO, ZERO
    for n in range(1, bound + 1):
        total_f += g(forward)
        forward = advance(forward, 1)
        if forward.same_place(x2) and s2 == s - total_f:
            return n
        backward = advance(backward, -1)
        total_b -= g(backward)
        if backward.same_place(x2) and s2 == s - total_b:
            return -n
    return None


@dataclass(frozen=True, slots=True)
class Tile:
    """
    One tile [left, left + length).

    `index` counts tiles from the central one and is left out of equality.
    """
    label: Symbol
    length: QLin
    left: QLin
    index: int = field(default=0, compare=False)

    @property
    def right(self) -> QLin:
        return self.left + self.length

    def to_json(self) -> dict:
        return {
            'label': self.label,
            'length': self.length.to_json(),
            'left': self.left.to_json(),
            'index': self.index,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Tile:
        return cls(data['label'], QLin.from_json(data['length']),
                   QLin.from_json(data['left']), data.get('index', 0))


@dataclass(frozen=True, slots=True)
class TilePatch:
    """Abutting tiles left to right, positioned relative to the origin."""
    tiles: tuple[Tile, ...]

    def __post_init__(self):
        for a, b in zip(self.tiles, self.tiles[1:]):
            if a.right != b.left:
                raise ValueError(f"Tiles do not abut at {a.right} / {b.left}")

    @property
    def left(self) -> QLin:
        return self.tiles[0].left

    @property
    def right(self) -> QLin:
        return self.tiles[-1].right

    def total_length(self) -> QLin:
        return self.right - self.left

    def tiles_containing(self, coordinate: QLin) -> list[Tile]:
        """Tiles whose half-open span holds the coordinate (at most one)."""
        return [t for t in self.tiles if t.left <= coordinate < t.right]

    def labels(self) -> tuple[Symbol, ...]:
        return tuple(t.label for t in self.tiles)

    def to_json(self) -> dict:
        return {'tiles': [t.to_json() for t in self.tiles]}

    @classmethod
    def from_json(cls, data: Mapping) -> TilePatch:
        return cls(tuple(Tile.from_json(t) for t in data['tiles']))


def patch(sp: SuspensionPoint, L: QLin) -> TilePatch:
    """All tiles of the tiling [x, s] meeting [-L, L]; the origin sits s into the central tile."""
    if not L > ZERO:
        raise ValueError(f"Patch half-width must be positive, got {L}")
    g = sp.ceiling
    central = Tile(sp.base.symbol, g(sp.base), -sp.height, 0)
    tiles = [central]

    point, tile = sp.base, central
    while tile.right < L:
        point = advance(point, 1)
        tile = Tile(point.symbol, g(point), tile.right, tile.index + 1)
        tiles.append(tile)

    point, tile = sp.base, central
    while tile.left > -L:
        point = advance(point, -1)
        length = g(point)
        tile = Tile(point.symbol, length, tile.left - length, tile.index - 1)
        tiles.insert(0, tile)

    result = TilePatch(tuple(tiles))
    if len(result.tiles_containing(ZERO)) != 1:
        raise ValueError("Patch origin must lie in exactly one tile")
    return result
