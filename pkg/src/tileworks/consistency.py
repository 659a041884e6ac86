"""Membership checking for the locally consistent class of tile systems.

A system is locally consistent when, over everything it can produce:

1. every tile other than the seed initially binds with total strength
   exactly 2 (never 3 or 4), and
2. no two abutting tiles ever disagree on a side where either one has a
   positive-strength glue: positive strength on either side forces equal
   labels and equal strengths.

Both conditions are checked over a bounded exploration of the producible
set, so a passing verdict is always relative to the bound and carries a
coverage note.
"""

from __future__ import annotations

from dataclasses import dataclass

from .atam import (
    DIRECTIONS,
    Assembly,
    AssemblySequence,
    Coord,
    Direction,
    TileSystem,
    binding_strength,
    explore,
)


@dataclass(frozen=True)
class Witness:
    """A replayable counterexample: enough state to re-run the failed check."""

    kind: str
    assembly: Assembly
    pos: Coord
    tile: int | None = None
    direction: Direction | None = None
    detail: str = ""

    def describe(self) -> str:
        where = f"at {self.pos}"
        if self.direction is not None:
            where += f" toward {self.direction.name}"
        return f"{self.kind} {where}: {self.detail}"


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Witness | None = None
    truncated: bool = False
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _pair_mismatch(tas: TileSystem, asm: Assembly, pos: Coord, d: Direction) -> Witness | None:
    q = d.step(pos)
    other = asm.get(q)
    if other is None:
        return None
    a = tas.tiles[asm[pos]].side(d)
    b = tas.tiles[other].side(d.opposite)
    if a.strength == 0 and b.strength == 0:
        return None
    if a.glue == b.glue and a.strength == b.strength:
        return None
    return Witness(
        kind="label-mismatch",
        assembly=asm,
        pos=pos,
        direction=d,
        detail=(
            f"{a.glue}:{a.strength} abuts {b.glue}:{b.strength} "
            f"between {pos} and {q}"
        ),
    )


def check_binding_exactly_two(tas: TileSystem, seq: AssemblySequence) -> Verdict:
    """Condition 1 along one attachment history."""
    states = seq.assemblies()
    for i, (pos, tile) in enumerate(seq.steps):
        before = states[i]
        total = binding_strength(tas, before, pos, tile)
        if total != 2:
            witness = Witness(
                kind="strength-sum",
                assembly=before,
                pos=pos,
                tile=tile,
                detail=f"tile {tas.tiles[tile].name} binds with strength {total}, not 2",
            )
            return Verdict(False, witness)
    return Verdict(True)


def check_no_mismatch(tas: TileSystem, asm: Assembly) -> Verdict:
    """Condition 2 over every abutting pair of one assembly."""
    for pos, _ in asm.items():
        for d in (Direction.N, Direction.E):  # each unordered pair once
            witness = _pair_mismatch(tas, asm, pos, d)
            if witness is not None:
                return Verdict(False, witness)
    return Verdict(True)


def replay_witness(tas: TileSystem, witness: Witness) -> bool:
    """Re-run the single check a witness records; True means it still fails."""
    if witness.kind == "strength-sum":
        assert witness.tile is not None
        return binding_strength(tas, witness.assembly, witness.pos, witness.tile) != 2
    if witness.kind == "label-mismatch":
        assert witness.direction is not None
        return _pair_mismatch(tas, witness.assembly, witness.pos, witness.direction) is not None
    raise ValueError(f"unknown witness kind {witness.kind!r}")


def verify_locally_consistent(tas: TileSystem, bound: int) -> Verdict:
    """Check both conditions over every attachment reachable within `bound` tiles.

    Condition 1 is checked at each exploration edge (the strength recorded at
    attachment time); condition 2 on the abutting pairs that edge creates,
    which covers every pair of every producible assembly exactly once.
    """
    result = explore(tas, bound)
    for edge in result.edges:
        if edge.strength != 2:
            parent = result.assemblies[edge.parent]
            witness = Witness(
                kind="strength-sum",
                assembly=parent,
                pos=edge.pos,
                tile=edge.tile,
                detail=(
                    f"tile {tas.tiles[edge.tile].name} attaches at {edge.pos} "
                    f"with strength {edge.strength}, not 2"
                ),
            )
            return Verdict(False, witness, result.truncated, _note(bound, result.truncated))
        child = result.assemblies[edge.child]
        for d in DIRECTIONS:
            witness = _pair_mismatch(tas, child, edge.pos, d)
            if witness is not None:
                return Verdict(False, witness, result.truncated, _note(bound, result.truncated))
    return Verdict(True, None, result.truncated, _note(bound, result.truncated))


def _note(bound: int, truncated: bool) -> str:
    state = "exploration truncated at the bound" if truncated else "producible set exhausted"
    return f"checked every attachment up to {bound} tiles; {state}"
