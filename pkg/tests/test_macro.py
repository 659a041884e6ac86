from __future__ import annotations

import pytest

from tileworks.atam import Direction, Pad, TileSystem, TileType, explore
from tileworks.blocks import BlockPhase, BlockState, InputKind, detect_kind
from tileworks.encoding import compile_system
from tileworks.macro import (
    EventKind,
    MacroEvent,
    MacroEventError,
    RepresentationError,
    ThreeProbeError,
    decode_assembly,
    decode_block,
    macro_explore,
    macro_frontier,
    macro_step,
    run_macro,
    seed_macro,
    terminal_macro_keys,
)


def test_detect_kind():
    assert detect_kind((Pad("a", Direction.E, 2),)) is InputKind.SINGLE_STRENGTH_2
    assert (
        detect_kind((Pad("a", Direction.N, 1), Pad("b", Direction.S, 1)))
        is InputKind.OPPOSITE_PAIR
    )
    assert (
        detect_kind((Pad("a", Direction.S, 1), Pad("b", Direction.W, 1)))
        is InputKind.ADJACENT_PAIR
    )
    with pytest.raises(ValueError):
        detect_kind((Pad("a", Direction.E, 1),))
    with pytest.raises(ValueError):
        detect_kind(())


def test_seed_macro_frontier(compiled):
    cs = compiled["elbow"]
    macro = seed_macro(cs)
    events = macro_frontier(cs, macro)
    assert [e.kind for e in events] == [EventKind.PAD_ARRIVAL, EventKind.PAD_ARRIVAL]
    assert {e.coord for e in events} == {(1, 0), (0, 1)}
    # received pads name the receiving side
    received = {e.coord: e.pad for e in events}
    assert received[(1, 0)].direction is Direction.W
    assert received[(0, 1)].direction is Direction.S


def test_no_probe_below_strength_two(compiled):
    cs = compiled["nondet_elbow"]
    macro = seed_macro(cs)
    # deliver only tR's path: east arm, then its weak north pad
    for _ in range(5):
        events = [e for e in macro_frontier(cs, macro) if e.coord[1] == 0 or e.coord == (1, 1)]
        if not events:
            break
        macro = macro_step(cs, macro, events[0], rng_seed=1)
    state = macro.get((1, 1))
    assert state is not None
    assert state.phase is BlockPhase.INPUTS_PARTIAL
    assert state.received_strength == 1
    assert all(
        e.coord != (1, 1) or e.kind is EventKind.PAD_ARRIVAL
        for e in macro_frontier(cs, macro)
    )


def test_probe_detects_adjacent_pair(compiled):
    cs = compiled["elbow"]
    run = run_macro(cs, rng_seed=3)
    corner = run.final.get((1, 1))
    assert corner.input_kind is InputKind.ADJACENT_PAIR
    assert corner.phase is BlockPhase.COMPLETE


def test_run_macro_reaches_elbow_terminal(compiled):
    cs = compiled["elbow"]
    run = run_macro(cs, rng_seed=0)
    assert not run.truncated
    assert macro_frontier(cs, run.final) == ()
    decoded = decode_assembly(run.final, cs)
    names = {pos: cs.source.tiles[t].name for pos, t in decoded.items()}
    assert names == {(0, 0): "seed", (1, 0): "tR", (0, 1): "tU", (1, 1): "tD"}
    assert len(run.events) == 13  # 4 arrivals + 3 probes + 3 commits + 3 completions
    assert sum(1 for e in run.events if e.kind is EventKind.PAD_ARRIVAL) == 4
    assert any("adjacent-pair" in line for line in run.log)
    assert any("-> tD" in line for line in run.log)


def test_run_macro_is_reproducible(compiled):
    cs = compiled["nondet_elbow"]
    a = run_macro(cs, rng_seed=9)
    b = run_macro(cs, rng_seed=9)
    assert a.events == b.events
    assert a.log == b.log
    assert a.final == b.final


def test_run_macro_bound_truncates(compiled):
    cs = compiled["counter3"]
    run = run_macro(cs, rng_seed=2, bound=8)
    assert run.truncated
    assert len(run.final) <= 8


def test_macro_explore_matches_source(compiled):
    cs = compiled["elbow"]
    result = macro_explore(cs, 6)
    assert not result.truncated
    src = explore(cs.source, 6)
    images = {decode_assembly(m, cs).key for m in result.states.values()}
    assert images == set(src.assemblies)


def test_macro_explore_nondet_terminals(compiled):
    cs = compiled["nondet_elbow"]
    result = macro_explore(cs, 6)
    terms = terminal_macro_keys(cs, result)
    assert len(terms) == 2
    decoded = {decode_assembly(result.states[k], cs).key for k in terms}
    src_terms = set(explore(cs.source, 6).terminal_keys(cs.source))
    assert decoded == src_terms


def test_commit_branches_split_on_entry(compiled):
    cs = compiled["nondet_elbow"]
    result = macro_explore(cs, 6)
    commit_edges = [
        e for e in result.edges
        if e.event.kind is EventKind.COMMIT and e.event.coord == (1, 1)
    ]
    children = {e.child for e in commit_edges}
    tiles = set()
    for ckey in children:
        state = result.states[ckey].get((1, 1))
        tiles.add(cs.source.tiles[state.committed_tile].name)
    assert tiles == {"tD", "tDp"}


def test_illegal_events_raise(compiled):
    cs = compiled["elbow"]
    macro = seed_macro(cs)
    with pytest.raises(MacroEventError):
        macro_step(cs, macro, MacroEvent(EventKind.PROBE, (5, 5)), rng_seed=0)
    with pytest.raises(MacroEventError):
        macro_step(cs, macro, MacroEvent(EventKind.COMMIT, (0, 0)))
    with pytest.raises(MacroEventError):
        macro_step(cs, macro, MacroEvent(EventKind.PROBE, (0, 0)), rng_seed=0)
    with pytest.raises(MacroEventError):
        # the seed block is complete; it cannot receive pads
        macro_step(
            cs,
            macro,
            MacroEvent(
                EventKind.PAD_ARRIVAL, (0, 0), Pad("a", Direction.E, 2), (1, 0)
            ),
        )
    arrival = macro_frontier(cs, macro)[0]
    partial = macro_step(cs, macro, arrival)
    with pytest.raises(MacroEventError):
        macro_step(cs, partial, arrival)  # same side twice
    with pytest.raises(MacroEventError):
        macro_step(cs, partial, MacroEvent(EventKind.PROBE, arrival.coord))  # no seed given


def _three_input_system() -> TileSystem:
    # three pads converge on (1, 1): x from t1 below, x from t2 at the west,
    # and x from t4 arriving from the east arm above
    tiles = (
        TileType.make("seed", e=("a", 2), n=("b", 2)),
        TileType.make("t1", w=("a", 2), n=("x", 1), e=("c", 2)),
        TileType.make("t2", s=("b", 2), e=("x", 1)),
        TileType.make("t3", w=("c", 2), n=("d", 2)),
        TileType.make("t4", s=("d", 2), w=("x", 1)),
    )
    return TileSystem(tiles, seed=0, name="three_probe")


def test_three_pad_arrival_is_diagnosed():
    tas = _three_input_system()
    cs = compile_system(tas, force=True)  # outside the class on purpose
    with pytest.raises(ThreeProbeError):
        macro_explore(cs, 8)


def test_decode_block_integrity(compiled):
    cs = compiled["elbow"]
    run = run_macro(cs, rng_seed=0)
    corner = run.final.get((1, 1))
    assert decode_block(corner, cs) == cs.source.tile_index("tD")
    assert decode_block(BlockState(BlockPhase.INPUTS_PARTIAL), cs) is None
    # a committed block whose outputs disagree with its tile is corrupt
    bad = BlockState(
        BlockPhase.COMPLETE,
        corner.input_pads,
        corner.input_kind,
        None,
        cs.source.tile_index("tR"),  # wrong tile for these pads
        corner.output_pads,
    )
    with pytest.raises(RepresentationError):
        decode_block(bad, cs)
    with pytest.raises(RepresentationError):
        decode_block(
            BlockState(BlockPhase.COMMITTED, committed_tile=None), cs
        )


def test_decode_assembly_reports_block(compiled):
    cs = compiled["elbow"]
    run = run_macro(cs, rng_seed=0)
    corrupted = run.final.with_block(
        (1, 1),
        BlockState(
            BlockPhase.COMPLETE,
            run.final.get((1, 1)).input_pads,
            InputKind.ADJACENT_PAIR,
            None,
            cs.source.tile_index("tU"),
            run.final.get((1, 1)).output_pads,
        ),
    )
    with pytest.raises(RepresentationError) as err:
        decode_assembly(corrupted, cs)
    assert "(1, 1)" in str(err.value)
