"""Table lookup: a traced kernel sweep and an independent direct parser.

`trace_lookup` answers an (address, random bits) query by sweeping the
spliced table exactly the way the construction's internal machinery would:
match the entry by counting markers, count sub-entries, count the remaining
entries, then count back down through the mirrored half and read the selected
mirrored sub-entry, whose fields come out in W,S,E,N order with forward bit
fields (the mirror un-reverses them).

`direct_lookup` never touches the table: it indexes the raw entries string
and parses the requested sub-entry in place.  The two routes exist to check
each other and are kept deliberately independent.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .atam import DIRECTIONS, Direction, Pad, WorkbenchError
from .encoding import CompiledSystem, DecodeError, GlueOrdering, decode_pad


BLANK_CHAR = " "


class LookupError_(WorkbenchError):
    pass


class AddressRangeError(LookupError_):
    pass


class EmptyEntryError(LookupError_):
    def __init__(self, message: str, trace: "PhaseTrace | None" = None):
        super().__init__(message)
        self.trace = trace


class SelectionError(LookupError_):
    pass


class EntryFormatError(LookupError_):
    pass


class TableFormatError(LookupError_):
    pass


@dataclass(frozen=True)
class SubEntry:
    """Output pads of one attachable tile, sorted in N,E,S,W side order."""

    pads: tuple[Pad, ...]

    def pad_for(self, direction: Direction) -> Pad | None:
        for pad in self.pads:
            if pad.direction is direction:
                return pad
        return None

    def by_direction(self) -> dict[Direction, Pad]:
        return {p.direction: p for p in self.pads}


@dataclass(frozen=True)
class LookupOutcome:
    sub_entry: SubEntry
    tile_candidates: tuple[int, ...]
    selected_index: int


@dataclass(frozen=True)
class PhaseTrace:
    """Scalar record of one sweep; column annotations are rendered on demand."""

    addr: int
    bits: str
    match_col: int
    match_end: int
    sub_entries: int  # n
    remaining_entries: int  # m
    selection: int  # p = bits mod n
    middle_span: tuple[int, int]
    mirror_span: tuple[int, int]
    selected_span: tuple[int, int]
    selected_index: int  # in original sub-entry order: n - 1 - p


def mod_select(bits: str, n: int) -> int:
    """The selection index p for a drawn bit string: value(bits) mod n."""
    if n < 1:
        raise SelectionError("selection requires at least one sub-entry")
    if bits == "" or any(c not in "01" for c in bits):
        raise SelectionError(f"not a bit string: {bits!r}")
    return int(bits, 2) % n


def parse_entry(entry: str, ordering: GlueOrdering) -> tuple[SubEntry, ...]:
    """Parse one raw entry ('#' plus payload) into its sub-entries."""
    if not entry.startswith("#"):
        raise EntryFormatError(f"an entry starts with '#', got {entry[:8]!r}")
    payload = entry[1:]
    if any(c == "#" for c in payload):
        raise EntryFormatError("an entry holds no '#' past its marker")
    if payload == "":
        return ()
    subs = []
    for chunk in payload.split(";"):
        fields = chunk.split(",")
        if len(fields) != 4:
            raise EntryFormatError(
                f"a sub-entry has four comma-separated fields, got {chunk!r}"
            )
        pads = []
        for field_text, direction in zip(fields, DIRECTIONS):
            if field_text == "":
                continue
            try:
                pad = decode_pad(field_text[::-1], ordering)  # fields are reversed
            except DecodeError as exc:
                raise EntryFormatError(f"bad pad field {field_text!r}: {exc}") from exc
            if pad.direction is not direction:
                raise EntryFormatError(
                    f"field for side {direction.name} decodes to side {pad.direction.name}"
                )
            pads.append(pad)
        subs.append(SubEntry(tuple(pads)))
    return tuple(subs)


def direct_lookup(cs: CompiledSystem, addr: int, p: int) -> SubEntry:
    """Oracle route: parse sub-entry `p` of entry `addr` straight from the entries string."""
    payloads = cs.entry_payloads()
    if addr < 0 or addr >= len(payloads):
        raise AddressRangeError(
            f"address {addr} out of range; table has {len(payloads)} entries"
        )
    subs = parse_entry("#" + payloads[addr], cs.glues)
    if not subs:
        raise EmptyEntryError(f"entry {addr} is bare; no tile attaches there")
    if not 0 <= p < len(subs):
        raise SelectionError(f"sub-entry index {p} out of range for {len(subs)} sub-entries")
    return subs[p]


def _mirror_field_pads(cs: CompiledSystem, sel_lo: int, sel_hi: int) -> tuple[Pad, ...]:
    # real symbols occupy even columns; step 2 drops the spliced blanks
    text = cs.table.symbols[sel_lo:sel_hi:2]
    fields = text.split(",")
    if len(fields) != 4:
        raise TableFormatError(f"mirrored sub-entry has {len(fields)} fields: {text!r}")
    pads = []
    # mirrored fields arrive in W,S,E,N order with forward bit fields
    for field_text, direction in zip(fields, reversed(DIRECTIONS)):
        if field_text == "":
            continue
        try:
            pad = decode_pad(field_text, cs.glues)
        except DecodeError as exc:
            raise TableFormatError(f"bad mirrored field {field_text!r}: {exc}") from exc
        if pad.direction is not direction:
            raise TableFormatError(
                f"mirrored field for side {direction.name} decodes to {pad.direction.name}"
            )
        pads.append(pad)
    return tuple(sorted(pads, key=Pad.sort_key))


def trace_lookup(
    cs: CompiledSystem, addr: int, bits: str, impl: str | None = None
) -> tuple[LookupOutcome, PhaseTrace]:
    """Kernel route: sweep the spliced table and decode the selected mirror span."""
    if bits == "" or any(c not in "01" for c in bits):
        raise SelectionError(f"not a bit string: {bits!r}")
    b = int(bits, 2)
    cache = cs.table.sweep_cache
    key = (addr, b)
    rec = cache.get(key)
    if rec is None:
        rec = kernels.sweep(cs.table.index, addr, b, impl)
        cache[key] = rec
    status = int(rec[kernels.S_STATUS])
    if status == kernels.E_ADDR_RANGE:
        raise AddressRangeError(
            f"address {addr} out of range; table has {cs.entry_count} entries"
        )
    if status == kernels.E_MALFORMED:
        raise TableFormatError("table failed the sweep's structural checks")
    trace = PhaseTrace(
        addr=addr,
        bits=bits,
        match_col=int(rec[kernels.S_MATCH]),
        match_end=int(rec[kernels.S_MATCH_END]),
        sub_entries=int(rec[kernels.S_N]),
        remaining_entries=int(rec[kernels.S_M]),
        selection=int(rec[kernels.S_P]),
        middle_span=(int(rec[kernels.S_MIDDLE_LT]), int(rec[kernels.S_MIDDLE_GT])),
        mirror_span=(int(rec[kernels.S_MIRROR_LO]), int(rec[kernels.S_MIRROR_HI])),
        selected_span=(int(rec[kernels.S_SEL_LO]), int(rec[kernels.S_SEL_HI])),
        selected_index=(
            int(rec[kernels.S_N]) - 1 - int(rec[kernels.S_P])
            if status == kernels.OK
            else -1
        ),
    )
    if status == kernels.E_EMPTY_ENTRY:
        raise EmptyEntryError(
            f"entry {addr} is bare; no tile attaches there", trace=trace
        )
    pads = _mirror_field_pads(cs, *trace.selected_span)
    entry = cs.addresses.get(addr)
    candidates = entry.tiles if entry is not None else ()
    outcome = LookupOutcome(SubEntry(pads), candidates, trace.selected_index)
    return outcome, trace


def selection_counts(cs: CompiledSystem, addr: int, width: int | None = None) -> dict[int, int]:
    """How often each original sub-entry index gets picked over all bit strings."""
    width = cs.random_width if width is None else width
    counts: dict[int, int] = {}
    for b in range(2**width):
        outcome, _ = trace_lookup(cs, addr, format(b, f"0{width}b"))
        counts[outcome.selected_index] = counts.get(outcome.selected_index, 0) + 1
    return counts


def render_trace(cs: CompiledSystem, trace: PhaseTrace, limit: int | None = None) -> str:
    """Human-readable sweep: one line per column with phase and counter labels."""
    symbols = cs.table.symbols
    match, match_end = trace.match_col, trace.match_end
    mid_lt, mid_gt = trace.middle_span
    mir_lo, mir_hi = trace.mirror_span
    sel_lo, sel_hi = trace.selected_span
    lines = [
        f"addr={trace.addr} bits={trace.bits} n={trace.sub_entries} "
        f"m={trace.remaining_entries} p={trace.selection} "
        f"selected_index={trace.selected_index}"
    ]
    entries_seen = 0
    count_down = trace.remaining_entries
    total = len(symbols) if limit is None else min(limit, len(symbols))
    for col in range(total):
        sym = symbols[col]
        if sym == BLANK_CHAR:
            continue
        if sym == "#":
            if col <= match:
                entries_seen += 1
            elif mid_gt < col <= mir_hi:
                count_down -= 1
        if col < match:
            phase = f"seek entries={entries_seen}"
        elif col == match:
            phase = f"match entries={entries_seen}"
        elif col < match_end:
            phase = "count-subs"
        elif col < mid_lt:
            phase = "count-rest"
        elif col <= mid_gt:
            phase = "middle"
        elif col < mir_lo:
            phase = f"countdown m={max(count_down, 0)}"
        elif sel_lo <= col < sel_hi:
            phase = "selected"
        elif col <= mir_hi:
            phase = "mirror"
        else:
            phase = "tail"
        lines.append(f"{col:>7} {sym} {phase}")
    if limit is not None and limit < len(symbols):
        lines.append(f"... ({len(symbols) - limit} more columns)")
    return "\n".join(lines)
