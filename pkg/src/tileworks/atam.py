"""Core model for temperature-2 tile self-assembly.

Square tiles carry a glue (label plus integer strength) on each of their four
sides.  A tile may attach to an assembly at an empty position when the glues it
shares with already-placed neighbours match on both label and strength and the
matching strengths sum to at least the temperature, which is fixed at 2
throughout this package.  Mismatching glues never block an attachment; they
simply contribute nothing.

Assemblies are finite partial maps from grid positions to tile-type indices,
always seeded with a single designated tile at the origin.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

TEMPERATURE = 2

Coord = tuple[int, int]


class WorkbenchError(Exception):
    """Base class for every error this package raises on purpose."""


class OccupiedPositionError(WorkbenchError):
    pass


class IllegalAttachmentError(WorkbenchError):
    """Attachment below the temperature threshold; carries the computed strength."""

    def __init__(self, pos: Coord, tile: int, strength: int):
        super().__init__(
            f"tile {tile} cannot attach at {pos}: binding strength {strength} < {TEMPERATURE}"
        )
        self.pos = pos
        self.tile = tile
        self.strength = strength


class NoAttachmentRecordError(WorkbenchError):
    pass


class Direction(Enum):
    N = (0, 1)
    E = (1, 0)
    S = (0, -1)
    W = (-1, 0)

    @property
    def vector(self) -> Coord:
        return self.value

    @property
    def opposite(self) -> "Direction":
        return _OPPOSITE[self]

    def step(self, pos: Coord) -> Coord:
        dx, dy = self.value
        return (pos[0] + dx, pos[1] + dy)


_OPPOSITE = {
    Direction.N: Direction.S,
    Direction.S: Direction.N,
    Direction.E: Direction.W,
    Direction.W: Direction.E,
}

DIRECTIONS = (Direction.N, Direction.E, Direction.S, Direction.W)
_DIR_INDEX = {d: i for i, d in enumerate(DIRECTIONS)}


def direction_order(d: Direction) -> int:
    """Canonical N, E, S, W ordering used everywhere sorting is needed."""
    return _DIR_INDEX[d]


@dataclass(frozen=True)
class SidePad:
    """Glue on one side of a tile type.  The null glue is label None, strength 0."""

    glue: str | None
    strength: int

    def __post_init__(self):
        if (self.glue is None) != (self.strength == 0):
            raise ValueError(f"null glue iff strength 0, got {self.glue!r}:{self.strength}")
        if self.strength not in (0, 1, 2):
            raise ValueError(f"strength must be 0, 1 or 2, got {self.strength}")


NULL_PAD = SidePad(None, 0)


@dataclass(frozen=True)
class Pad:
    """An oriented positive-strength glue: what one side of a placed tile offers."""

    glue: str
    direction: Direction
    strength: int

    def __post_init__(self):
        if not isinstance(self.glue, str) or not self.glue:
            raise ValueError("pad glue must be a nonempty label")
        if self.strength not in (1, 2):
            raise ValueError(f"pad strength must be 1 or 2, got {self.strength}")

    def sort_key(self) -> tuple[int, str, int]:
        return (direction_order(self.direction), self.glue, self.strength)


def _as_side(value) -> SidePad:
    if value is None:
        return NULL_PAD
    if isinstance(value, SidePad):
        return value
    glue, strength = value
    return SidePad(glue, strength)


@dataclass(frozen=True)
class TileType:
    name: str
    north: SidePad = NULL_PAD
    east: SidePad = NULL_PAD
    south: SidePad = NULL_PAD
    west: SidePad = NULL_PAD

    @classmethod
    def make(cls, name: str, n=None, e=None, s=None, w=None) -> "TileType":
        """Build a tile from (glue, strength) pairs; None means the null glue."""
        return cls(name, _as_side(n), _as_side(e), _as_side(s), _as_side(w))

    def side(self, d: Direction) -> SidePad:
        if d is Direction.N:
            return self.north
        if d is Direction.E:
            return self.east
        if d is Direction.S:
            return self.south
        return self.west

    def sides(self) -> Iterator[tuple[Direction, SidePad]]:
        for d in DIRECTIONS:
            yield d, self.side(d)


@dataclass(frozen=True)
class TileSystem:
    """A singly seeded tile set at temperature 2."""

    tiles: tuple[TileType, ...]
    seed: int
    temperature: int = TEMPERATURE
    name: str = ""

    def __post_init__(self):
        if self.temperature != TEMPERATURE:
            raise ValueError(f"only temperature {TEMPERATURE} is supported")
        if not self.tiles:
            raise ValueError("a tile system needs at least one tile type")
        if not 0 <= self.seed < len(self.tiles):
            raise ValueError(f"seed index {self.seed} out of range")
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise ValueError("tile type names must be unique")

    def tile_index(self, name: str) -> int:
        for i, t in enumerate(self.tiles):
            if t.name == name:
                return i
        raise KeyError(name)

    @property
    def seed_tile(self) -> TileType:
        return self.tiles[self.seed]


class Assembly:
    """Immutable nonempty partial map from positions to tile-type indices."""

    __slots__ = ("_cells", "_key")

    def __init__(self, cells: Mapping[Coord, int]):
        if not cells:
            raise ValueError("an assembly must be nonempty")
        self._cells = dict(cells)
        self._key = frozenset(self._cells.items())

    @property
    def key(self) -> frozenset:
        """Canonical value identity: the set of (position, tile index) pairs."""
        return self._key

    def get(self, pos: Coord) -> int | None:
        return self._cells.get(pos)

    def __getitem__(self, pos: Coord) -> int:
        return self._cells[pos]

    def __contains__(self, pos: Coord) -> bool:
        return pos in self._cells

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, Assembly) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Assembly({len(self._cells)} tiles)"

    def items(self) -> Iterator[tuple[Coord, int]]:
        return iter(self._cells.items())

    def sorted_items(self) -> list[tuple[Coord, int]]:
        return sorted(self._cells.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def positions(self) -> Iterator[Coord]:
        return iter(self._cells)

    def with_tile(self, pos: Coord, tile: int) -> "Assembly":
        if pos in self._cells:
            raise OccupiedPositionError(f"position {pos} already holds a tile")
        cells = dict(self._cells)
        cells[pos] = tile
        return Assembly(cells)

    def bounds(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self._cells]
        ys = [p[1] for p in self._cells]
        return min(xs), min(ys), max(xs), max(ys)


def seed_assembly(tas: TileSystem) -> Assembly:
    return Assembly({(0, 0): tas.seed})


def _matched_sides(tas: TileSystem, asm: Assembly, pos: Coord, tile: int):
    """Sides of `tile` at `pos` whose glue matches the abutting neighbour.

    A match requires equal labels and equal strengths; the null glue never
    matches anything.
    """
    t = tas.tiles[tile]
    out = []
    for d in DIRECTIONS:
        other = asm.get(d.step(pos))
        if other is None:
            continue
        mine = t.side(d)
        if mine.glue is None:
            continue
        theirs = tas.tiles[other].side(d.opposite)
        if mine.glue == theirs.glue and mine.strength == theirs.strength:
            out.append((d, mine.strength))
    return out


def binding_strength(tas: TileSystem, asm: Assembly, pos: Coord, tile: int) -> int:
    """Total matching glue strength `tile` would bind with at `pos`."""
    if pos in asm:
        raise OccupiedPositionError(f"position {pos} already holds a tile")
    return sum(s for _, s in _matched_sides(tas, asm, pos, tile))


def matching_sides(tas: TileSystem, asm: Assembly, pos: Coord, tile: int) -> frozenset[Direction]:
    if pos in asm:
        raise OccupiedPositionError(f"position {pos} already holds a tile")
    return frozenset(d for d, _ in _matched_sides(tas, asm, pos, tile))


def _frontier_at(tas: TileSystem, asm: Assembly, pos: Coord) -> list[tuple[Coord, int]]:
    found = []
    for tile in range(len(tas.tiles)):
        if sum(s for _, s in _matched_sides(tas, asm, pos, tile)) >= TEMPERATURE:
            found.append((pos, tile))
    return found


def frontier(tas: TileSystem, asm: Assembly) -> frozenset[tuple[Coord, int]]:
    """All (position, tile) pairs that may legally attach to `asm`."""
    seen: set[Coord] = set()
    out: list[tuple[Coord, int]] = []
    for pos in asm.positions():
        for d in DIRECTIONS:
            q = d.step(pos)
            if q in seen or q in asm:
                continue
            seen.add(q)
            out.extend(_frontier_at(tas, asm, q))
    return frozenset(out)


def _front_key(item: tuple[Coord, int]):
    (x, y), tile = item
    return (y, x, tile)


def sorted_frontier(tas: TileSystem, asm: Assembly) -> list[tuple[Coord, int]]:
    return sorted(frontier(tas, asm), key=_front_key)


def _advance_frontier(
    tas: TileSystem,
    child: Assembly,
    parent_front: frozenset[tuple[Coord, int]],
    pos: Coord,
) -> frozenset[tuple[Coord, int]]:
    # Strengths only grow when a neighbour appears, so surviving pairs stay
    # valid; only the four positions around the new tile need a fresh look.
    keep = {pt for pt in parent_front if pt[0] != pos}
    for d in DIRECTIONS:
        q = d.step(pos)
        if q in child:
            continue
        keep.update(_frontier_at(tas, child, q))
    return frozenset(keep)


def attach(tas: TileSystem, asm: Assembly, pos: Coord, tile: int) -> Assembly:
    """Attach one tile, validating the temperature threshold."""
    strength = binding_strength(tas, asm, pos, tile)
    if strength < TEMPERATURE:
        raise IllegalAttachmentError(pos, tile, strength)
    return asm.with_tile(pos, tile)


def is_terminal(tas: TileSystem, asm: Assembly) -> bool:
    return not frontier(tas, asm)


@dataclass(frozen=True)
class AssemblySequence:
    """A legal attachment history starting from the seed assembly."""

    system: TileSystem
    steps: tuple[tuple[Coord, int], ...]
    _assemblies: tuple[Assembly, ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self):
        asm = seed_assembly(self.system)
        states = [asm]
        for pos, tile in self.steps:
            asm = attach(self.system, asm, pos, tile)
            states.append(asm)
        object.__setattr__(self, "_assemblies", tuple(states))

    def __len__(self) -> int:
        return len(self.steps)

    def assemblies(self) -> tuple[Assembly, ...]:
        """Seed assembly followed by the state after each step."""
        return self._assemblies

    def result(self) -> Assembly:
        return self._assemblies[-1]


def attachment_sides(seq: AssemblySequence, pos: Coord) -> frozenset[Direction]:
    """Sides on which the tile at `pos` initially bound when the sequence placed it."""
    for i, (p, tile) in enumerate(seq.steps):
        if p == pos:
            before = seq.assemblies()[i]
            return matching_sides(seq.system, before, pos, tile)
    raise NoAttachmentRecordError(f"no step in the sequence places a tile at {pos}")


@dataclass(frozen=True)
class AttachmentEdge:
    """One legal attachment between two explored assemblies."""

    parent: frozenset
    child: frozenset
    pos: Coord
    tile: int
    bound_sides: frozenset[Direction]
    strength: int


@dataclass
class ExplorationResult:
    assemblies: dict[frozenset, Assembly]
    edges: tuple[AttachmentEdge, ...]
    seed_key: frozenset
    truncated: bool
    bound: int

    def terminal_keys(self, tas: TileSystem) -> list[frozenset]:
        reachable_parents = {e.parent for e in self.edges}
        out = []
        for key, asm in self.assemblies.items():
            if key in reachable_parents:
                continue
            if len(asm) >= self.bound and not is_terminal(tas, asm):
                continue  # expansion was cut off by the bound, not by the system
            out.append(key)
        return sorted(out, key=lambda k: (len(k), sorted(k)))


def explore(tas: TileSystem, bound: int, _reverse: bool = False) -> ExplorationResult:
    """Breadth-first closure of all producible assemblies up to `bound` tiles.

    `truncated` is set when some assembly at the bound still had a nonempty
    frontier, i.e. the producible set continues past what was enumerated.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    seed = seed_assembly(tas)
    assemblies: dict[frozenset, Assembly] = {seed.key: seed}
    fronts: dict[frozenset, frozenset] = {seed.key: frontier(tas, seed)}
    edges: list[AttachmentEdge] = []
    queue: deque[frozenset] = deque([seed.key])
    truncated = False
    while queue:
        key = queue.popleft()
        asm = assemblies[key]
        front = fronts[key]
        if len(asm) >= bound:
            if front:
                truncated = True
            continue
        ordered = sorted(front, key=_front_key)
        if _reverse:
            ordered.reverse()
        for pos, tile in ordered:
            matched = _matched_sides(tas, asm, pos, tile)
            sides = frozenset(d for d, _ in matched)
            strength = sum(s for _, s in matched)
            child = asm.with_tile(pos, tile)
            ckey = child.key
            if ckey not in assemblies:
                assemblies[ckey] = child
                fronts[ckey] = _advance_frontier(tas, child, front, pos)
                queue.append(ckey)
            edges.append(AttachmentEdge(key, ckey, pos, tile, sides, strength))
    return ExplorationResult(assemblies, tuple(edges), seed.key, truncated, bound)


def sample_sequence(tas: TileSystem, rng_seed: int, max_steps: int) -> AssemblySequence:
    """One uniformly random attachment history, reproducible from `rng_seed`."""
    rng = random.Random(rng_seed)
    asm = seed_assembly(tas)
    front = frontier(tas, asm)
    steps: list[tuple[Coord, int]] = []
    while front and len(steps) < max_steps:
        ordered = sorted(front, key=_front_key)
        pos, tile = ordered[rng.randrange(len(ordered))]
        steps.append((pos, tile))
        asm = asm.with_tile(pos, tile)
        front = _advance_frontier(tas, asm, front, pos)
    return AssemblySequence(tas, tuple(steps))
