"""Slow, independent re-derivations used to pin the library's answers.

Everything here is written from the model definition alone, avoiding the
library's data structures and shortcuts: plain dicts for assemblies, a
from-scratch neighbour scan for strengths, binomials via math.comb, and a
character-level reference for the pad and splice encoders.
"""

from __future__ import annotations

import math

from tileworks.atam import TileSystem

_DIRS = (("N", (0, 1)), ("E", (1, 0)), ("S", (0, -1)), ("W", (-1, 0)))
_SIDE_OF = {"N": "north", "E": "east", "S": "south", "W": "west"}
_FLIP = {"N": "S", "S": "N", "E": "W", "W": "E"}


def naive_strength(tas: TileSystem, cells: dict, pos: tuple, tile: int) -> int:
    """Binding strength by direct neighbour scan over a plain dict."""
    total = 0
    t = tas.tiles[tile]
    for dname, (dx, dy) in _DIRS:
        q = (pos[0] + dx, pos[1] + dy)
        if q not in cells:
            continue
        mine = getattr(t, _SIDE_OF[dname])
        theirs = getattr(tas.tiles[cells[q]], _SIDE_OF[_FLIP[dname]])
        if mine.glue is not None and mine.glue == theirs.glue and mine.strength == theirs.strength:
            total += mine.strength
    return total


def brute_producibles(tas: TileSystem, bound: int) -> set[frozenset]:
    """Every producible assembly of at most `bound` tiles, the slow way."""
    seed = {(0, 0): tas.seed}
    seen = {frozenset(seed.items())}
    stack = [seed]
    while stack:
        cells = stack.pop()
        if len(cells) >= bound:
            continue
        empties = set()
        for (x, y) in cells:
            for _, (dx, dy) in _DIRS:
                q = (x + dx, y + dy)
                if q not in cells:
                    empties.add(q)
        for pos in empties:
            for tile in range(len(tas.tiles)):
                if naive_strength(tas, cells, pos, tile) >= 2:
                    child = dict(cells)
                    child[pos] = tile
                    key = frozenset(child.items())
                    if key not in seen:
                        seen.add(key)
                        stack.append(child)
    return seen


def pascal_parity(x: int, y: int) -> int:
    """Parity of C(x + y, x), computed with actual binomials."""
    return math.comb(x + y, x) % 2


def ref_encode_pad(glue: str, direction: str, strength: int, labels: tuple) -> str:
    """Reference pad field built character by character."""
    width = len(labels).bit_length()
    idx = labels.index(glue)
    glue_bits = bin(idx)[2:].rjust(width, "0")
    dir_bits = {"N": "00", "E": "01", "S": "10", "W": "11"}[direction]
    return glue_bits + dir_bits + ("0" if strength == 1 else "1")


def ref_splice(text: str) -> str:
    """Loop-based blank splicing."""
    out = []
    for i, ch in enumerate(text):
        if i:
            out.append(" ")
        out.append(ch)
    return "".join(out)
