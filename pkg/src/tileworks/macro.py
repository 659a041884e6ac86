"""Block-level simulation driven by the compiled lookup table.

Each grid cell of the source system becomes a block.  Completed blocks push
their output pads at empty or collecting neighbours; a block whose received
pad strengths sum to exactly 2 probes the layout, draws random bits, commits
to a tile by running the table lookup on its input address, and finally
exposes the committed tile's output pads.  Decoding a block back to a tile is
defined from the committed phase onward.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from weakref import WeakKeyDictionary

from .atam import Assembly, Coord, Direction, Pad, WorkbenchError, direction_order
from .blocks import (
    BlockPhase,
    BlockState,
    MacroAssembly,
    detect_kind,
    sort_pads,
)
from .encoding import CompiledSystem, address_of, edge_string
from .lookup import AddressRangeError, EmptyEntryError, trace_lookup


class MacroEventError(WorkbenchError):
    pass


class ThreeProbeError(MacroEventError):
    """A block was offered a third input pad; the probe logic handles at most two."""


class RepresentationError(WorkbenchError):
    pass


class EventKind(IntEnum):
    PAD_ARRIVAL = 0
    PROBE = 1
    COMMIT = 2
    COMPLETION = 3


@dataclass(frozen=True)
class MacroEvent:
    kind: EventKind
    coord: Coord
    pad: Pad | None = None  # for arrivals: the pad as received (direction = receiving side)
    source: Coord | None = None

    def sort_key(self):
        d = direction_order(self.pad.direction) if self.pad is not None else -1
        return (int(self.kind), self.coord[1], self.coord[0], d)

    def describe(self) -> str:
        if self.kind is EventKind.PAD_ARRIVAL:
            assert self.pad is not None
            return (
                f"pad {self.pad.glue}:{self.pad.strength} arrives at {self.coord} "
                f"on side {self.pad.direction.name} from {self.source}"
            )
        return f"{self.kind.name.lower()} at {self.coord}"


def _addressable(cs: CompiledSystem, state: BlockState) -> bool:
    value = address_of(state.input_pads, cs.glues).value
    return value in cs.addresses


def macro_frontier(cs: CompiledSystem, macro: MacroAssembly) -> tuple[MacroEvent, ...]:
    """Every event currently enabled, in deterministic order."""
    events: list[MacroEvent] = []
    for coord, state in macro.blocks.items():
        if state.phase is BlockPhase.COMPLETE:
            for pad in state.output_pads:
                target = pad.direction.step(coord)
                received = Pad(pad.glue, pad.direction.opposite, pad.strength)
                neighbour = macro.get(target)
                if neighbour is None:
                    events.append(
                        MacroEvent(EventKind.PAD_ARRIVAL, target, received, coord)
                    )
                elif (
                    neighbour.phase is BlockPhase.INPUTS_PARTIAL
                    and received.direction not in neighbour.input_directions
                ):
                    events.append(
                        MacroEvent(EventKind.PAD_ARRIVAL, target, received, coord)
                    )
        elif state.phase is BlockPhase.INPUTS_PARTIAL:
            if state.received_strength == 2:
                events.append(MacroEvent(EventKind.PROBE, coord))
        elif state.phase is BlockPhase.TYPE_DETECTED:
            if _addressable(cs, state):
                events.append(MacroEvent(EventKind.COMMIT, coord))
        elif state.phase is BlockPhase.COMMITTED:
            events.append(MacroEvent(EventKind.COMPLETION, coord))
    events.sort(key=MacroEvent.sort_key)
    return tuple(events)


def _apply_event(
    cs: CompiledSystem,
    macro: MacroAssembly,
    event: MacroEvent,
    *,
    probe_bits: str | None = None,
    commit_bits: str | None = None,
    keep_bits: bool = True,
) -> MacroAssembly:
    coord = event.coord
    state = macro.get(coord)

    if event.kind is EventKind.PAD_ARRIVAL:
        assert event.pad is not None
        if state is None:
            new = BlockState(BlockPhase.INPUTS_PARTIAL, (event.pad,))
        elif state.phase is not BlockPhase.INPUTS_PARTIAL:
            raise MacroEventError(
                f"block {coord} in phase {state.phase.name} cannot receive pads"
            )
        elif event.pad.direction in state.input_directions:
            raise MacroEventError(
                f"block {coord} already received a pad on side {event.pad.direction.name}"
            )
        elif len(state.input_pads) >= 2:
            raise ThreeProbeError(
                f"block {coord} would receive a third input pad; "
                f"three-sided inputs are outside the supported class"
            )
        else:
            new = BlockState(
                BlockPhase.INPUTS_PARTIAL, sort_pads(state.input_pads + (event.pad,))
            )
        return macro.with_block(coord, new)

    if state is None:
        raise MacroEventError(f"no block at {coord}")

    if event.kind is EventKind.PROBE:
        if state.phase is not BlockPhase.INPUTS_PARTIAL or state.received_strength != 2:
            raise MacroEventError(
                f"probe needs a collecting block with received strength exactly 2, "
                f"got phase {state.phase.name} strength {state.received_strength} at {coord}"
            )
        kind = detect_kind(state.input_pads)
        new = BlockState(
            BlockPhase.TYPE_DETECTED, state.input_pads, kind, probe_bits
        )
        return macro.with_block(coord, new)

    if event.kind is EventKind.COMMIT:
        if state.phase is not BlockPhase.TYPE_DETECTED:
            raise MacroEventError(
                f"commit needs a type-detected block, got {state.phase.name} at {coord}"
            )
        bits = commit_bits if commit_bits is not None else state.random_bits
        if bits is None:
            raise MacroEventError(f"block {coord} has no random bits to commit with")
        address = address_of(state.input_pads, cs.glues)
        try:
            outcome, _ = trace_lookup(cs, address.value, bits)
        except (AddressRangeError, EmptyEntryError) as exc:
            raise MacroEventError(
                f"no tile attaches at {coord} for address {address.value}: {exc}"
            ) from exc
        tile_index = outcome.tile_candidates[outcome.selected_index]
        tile = cs.source.tiles[tile_index]
        for pad in state.input_pads:
            side = tile.side(pad.direction)
            if side.glue != pad.glue or side.strength != pad.strength:
                raise RepresentationError(
                    f"looked-up tile {tile.name} does not match input pad {pad} at {coord}"
                )
        new = BlockState(
            BlockPhase.COMMITTED,
            state.input_pads,
            state.input_kind,
            bits if keep_bits else None,
            tile_index,
            outcome.sub_entry.pads,
        )
        return macro.with_block(coord, new)

    if event.kind is EventKind.COMPLETION:
        if state.phase is not BlockPhase.COMMITTED:
            raise MacroEventError(
                f"completion needs a committed block, got {state.phase.name} at {coord}"
            )
        new = BlockState(
            BlockPhase.COMPLETE,
            state.input_pads,
            state.input_kind,
            state.random_bits,
            state.committed_tile,
            state.output_pads,
        )
        return macro.with_block(coord, new)

    raise MacroEventError(f"unknown event kind {event.kind!r}")


def macro_step(
    cs: CompiledSystem, macro: MacroAssembly, event: MacroEvent, rng_seed: int | None = None
) -> MacroAssembly:
    """Apply one event; probes draw their random bits from `rng_seed`."""
    probe_bits = None
    if event.kind is EventKind.PROBE:
        if rng_seed is None:
            raise MacroEventError("a probe event needs an rng seed to draw bits")
        rng = random.Random(rng_seed)
        probe_bits = format(rng.getrandbits(cs.random_width), f"0{cs.random_width}b")
    return _apply_event(cs, macro, event, probe_bits=probe_bits)


def seed_macro(cs: CompiledSystem) -> MacroAssembly:
    return MacroAssembly({(0, 0): cs.seed_block})


@dataclass
class MacroRun:
    """A sequential macro simulation: the event log and the final state."""

    events: tuple[MacroEvent, ...]
    log: tuple[str, ...]
    final: MacroAssembly
    truncated: bool


def run_macro(
    cs: CompiledSystem,
    rng_seed: int,
    *,
    max_events: int = 100_000,
    bound: int | None = None,
) -> MacroRun:
    """Apply uniformly chosen enabled events until quiescence, reproducibly."""
    rng = random.Random(rng_seed)
    macro = seed_macro(cs)
    applied: list[MacroEvent] = []
    log: list[str] = []
    truncated = False
    while len(applied) < max_events:
        events = list(macro_frontier(cs, macro))
        if bound is not None:
            kept = []
            for ev in events:
                if (
                    ev.kind is EventKind.PAD_ARRIVAL
                    and ev.coord not in macro.blocks
                    and len(macro) >= bound
                ):
                    truncated = True
                    continue
                kept.append(ev)
            events = kept
        if not events:
            break
        event = events[rng.randrange(len(events))]
        probe_bits = None
        if event.kind is EventKind.PROBE:
            probe_bits = format(
                rng.getrandbits(cs.random_width), f"0{cs.random_width}b"
            )
        macro = _apply_event(cs, macro, event, probe_bits=probe_bits)
        applied.append(event)
        note = event.describe()
        if event.kind is EventKind.PROBE:
            state = macro.get(event.coord)
            assert state is not None and state.input_kind is not None
            note += f" [{state.input_kind.value}, bits={state.random_bits}]"
        elif event.kind is EventKind.COMMIT:
            state = macro.get(event.coord)
            assert state is not None and state.committed_tile is not None
            note += f" -> {cs.source.tiles[state.committed_tile].name}"
        log.append(note)
    return MacroRun(tuple(applied), tuple(log), macro, truncated)


@dataclass(frozen=True)
class MacroEdge:
    parent: frozenset
    child: frozenset
    event: MacroEvent


@dataclass
class MacroExplorationResult:
    states: dict[frozenset, MacroAssembly]
    edges: tuple[MacroEdge, ...]
    seed_key: frozenset
    truncated: bool
    bound: int


def macro_explore(cs: CompiledSystem, bound: int) -> MacroExplorationResult:
    """Closure of macro states reachable within `bound` blocks.

    Commits branch over every possible random-bit value; since later behaviour
    depends only on the committed tile, commit children drop the raw bits and
    collapse to one state per distinct outcome.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    start = seed_macro(cs)
    states: dict[frozenset, MacroAssembly] = {start.key: start}
    edges: list[MacroEdge] = []
    queue: deque[frozenset] = deque([start.key])
    truncated = False
    bit_values = [
        format(b, f"0{cs.random_width}b") for b in range(2**cs.random_width)
    ]
    while queue:
        key = queue.popleft()
        macro = states[key]
        for event in macro_frontier(cs, macro):
            if (
                event.kind is EventKind.PAD_ARRIVAL
                and event.coord not in macro.blocks
                and len(macro) >= bound
            ):
                truncated = True
                continue
            if event.kind is EventKind.COMMIT:
                seen_children = set()
                for bits in bit_values:
                    child = _apply_event(
                        cs, macro, event, commit_bits=bits, keep_bits=False
                    )
                    ckey = child.key
                    if ckey in seen_children:
                        continue
                    seen_children.add(ckey)
                    if ckey not in states:
                        states[ckey] = child
                        queue.append(ckey)
                    edges.append(MacroEdge(key, ckey, event))
            else:
                child = _apply_event(cs, macro, event)
                ckey = child.key
                if ckey not in states:
                    states[ckey] = child
                    queue.append(ckey)
                edges.append(MacroEdge(key, ckey, event))
    return MacroExplorationResult(states, tuple(edges), start.key, truncated, bound)


def terminal_macro_keys(cs: CompiledSystem, result: MacroExplorationResult) -> list[frozenset]:
    """States with no enabled events at all (independent of the block bound)."""
    out = [
        key
        for key, macro in result.states.items()
        if not macro_frontier(cs, macro)
    ]
    out.sort(key=lambda k: len(k))
    return out


_EDGE_CHECKED: "WeakKeyDictionary[CompiledSystem, set[int]]" = WeakKeyDictionary()


def _check_edges_once(cs: CompiledSystem, tile_index: int) -> None:
    # The four edge strings are pure functions of the tile; verify once per
    # system that the pad fields embed where the geometry says they must.
    checked = _EDGE_CHECKED.setdefault(cs, set())
    if tile_index in checked:
        return
    tile = cs.source.tiles[tile_index]
    tlen = len(cs.table.symbols)
    width = cs.glues.pad_bits
    for d in (Direction.N, Direction.E, Direction.S, Direction.W):
        edge = edge_string(cs.table, cs.glues, tile, d, cs.spacer)
        if len(edge) != cs.resolution:
            raise RepresentationError(
                f"edge string of {tile.name}/{d.name} has length {len(edge)}, "
                f"expected resolution {cs.resolution}"
            )
        first = edge[tlen : tlen + width]
        second = edge[tlen + width + cs.spacer : tlen + 2 * width + cs.spacer]
        if first != second:
            raise RepresentationError(
                f"edge string of {tile.name}/{d.name} repeats its pad field inconsistently"
            )
    checked.add(tile_index)


def decode_block(state: BlockState, cs: CompiledSystem) -> int | None:
    """The tile a block represents, or None before commitment.

    A committed block must present exactly the committed tile's non-null,
    non-input pads; anything else is a representation-integrity error.
    """
    if state.phase < BlockPhase.COMMITTED:
        return None
    tile_index = state.committed_tile
    if tile_index is None:
        raise RepresentationError("committed block without a committed tile")
    tile = cs.source.tiles[tile_index]
    inputs = state.input_directions
    expected = sort_pads(
        Pad(side.glue, d, side.strength)
        for d, side in tile.sides()
        if side.glue is not None and d not in inputs
    )
    if expected != state.output_pads:
        raise RepresentationError(
            f"block output pads {state.output_pads} disagree with tile "
            f"{tile.name} (expected {expected})"
        )
    for pad in state.input_pads:
        side = tile.side(pad.direction)
        if side.glue != pad.glue or side.strength != pad.strength:
            raise RepresentationError(
                f"block input pad {pad} disagrees with tile {tile.name}"
            )
    _check_edges_once(cs, tile_index)
    return tile_index


def decode_assembly(macro: MacroAssembly, cs: CompiledSystem) -> Assembly:
    """Map every committed block to its tile; collecting blocks are undefined."""
    cells: dict[Coord, int] = {}
    for coord, state in macro.blocks.items():
        try:
            tile = decode_block(state, cs)
        except RepresentationError as exc:
            raise RepresentationError(f"block {coord}: {exc}") from exc
        if tile is not None:
            cells[coord] = tile
    if not cells:
        raise RepresentationError("no committed blocks; nothing to decode")
    return Assembly(cells)
