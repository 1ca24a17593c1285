"""Curated pairs of diagrams related by one local move.

Most pairs are closures of braid-like words in which every strand runs
upwards.  A word is a list of events:

    ("X", i, +1 | -1)  strands at positions i, i+1 cross; +1 puts the left strand over
    ("M", i)           strands i and i+1 merge into one strand at position i
    ("S", i)           the strand at position i splits into positions i and i+1
    ("K", i, w, f)     a curl of writhe w on strand i, first passing f ("under" or "over")

Positions are 1-based.  The top ends are joined back to the bottom ends by
arcs running round the right-hand side, so every closure is planar.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .library import trefoil
from .model import SurfaceDiagram, from_code
from .ops import _check, _edge_index, _kink_node, add_kink, reverse_s1

_fresh = itertools.count()


@dataclass(frozen=True)
class ClosedWord:
    diagram: SurfaceDiagram
    bottom: tuple[int, ...]  # edge index at each position of the bottom line
    after: tuple[tuple[int, ...], ...]  # after[t][p]: edge at position p just after event t


def closure(word: Sequence[tuple], n: int, name: str = "") -> ClosedWord:
    """Closure of a word on n strands (see the module docstring)."""
    tag = next(_fresh)
    cur = [("c", tag, p) for p in range(n)]
    nodes = []
    snapshots = []
    count = itertools.count()

    def new():
        return ("e", tag, next(count))

    for ev in word:
        kind, i = ev[0], ev[1] - 1
        if not 0 <= i < len(cur) - (0 if kind in "SK" else 1):
            raise ValueError(f"event {ev} out of range for {len(cur)} strands")
        if kind == "X":
            left, right = cur[i], cur[i + 1]
            lo, ro = new(), new()  # left strand ends on the right, and vice versa
            # counterclockwise from SE: right in, left out (NE), right out (NW), left in (SW)
            row = [(right, 1), (lo, -1), (ro, -1), (left, 1)]
            nodes.append(("X", row if ev[2] > 0 else row[1:] + row[:1]))
            cur[i], cur[i + 1] = ro, lo
        elif kind == "M":
            out = new()
            # counterclockwise from N: out, left in (SW), right in (SE)
            nodes.append(("V", [(out, -1), (cur[i], 1), (cur[i + 1], 1)]))
            cur[i : i + 2] = [out]
        elif kind == "S":
            left, right = new(), new()
            # counterclockwise from S: in, right out (NE), left out (NW)
            nodes.append(("V", [(cur[i], 1), (right, -1), (left, -1)]))
            cur[i : i + 1] = [left, right]
        elif kind == "K":
            out, loop = new(), new()
            nodes.append(_kink_node(cur[i], out, loop, ev[2], ev[3]))
            cur[i] = out
        else:
            raise ValueError(f"unknown event {ev}")
        snapshots.append(list(cur))
    if len(cur) != n:
        raise ValueError("word does not return to the starting number of strands")
    rename = {cur[p]: ("c", tag, p) for p in range(n)}
    if any(k == v for k, v in rename.items()):
        raise ValueError("a strand is untouched; it would be a free circle")
    nodes = [(k, [(rename.get(lab, lab), s) for lab, s in row]) for k, row in nodes]
    d = _check(from_code(nodes, name=name))
    index = lambda lab: _edge_index(nodes, rename.get(lab, lab))
    return ClosedWord(
        d,
        tuple(index(("c", tag, p)) for p in range(n)),
        tuple(tuple(index(lab) for lab in snap) for snap in snapshots),
    )


@dataclass(frozen=True)
class MovePair:
    tag: str
    before: SurfaceDiagram
    after: SurfaceDiagram


def _word_pair(tag: str, before, after, n: int, reverse: Sequence[int] = ()) -> MovePair:
    b, a = closure(before, n, f"{tag}:before"), closure(after, n, f"{tag}:after")
    db, da = b.diagram, a.diagram
    for p in reverse:
        # the component through bottom position p is a closed strand in both words
        db, da = reverse_s1(db, b.bottom[p]), reverse_s1(da, a.bottom[p])
    return MovePair(tag, db.renamed(f"{tag}:before"), da.renamed(f"{tag}:after"))


def _r1_pairs() -> list[MovePair]:
    """Two curls of opposite writhe cancel (a single curl changes the framing)."""
    out = []
    host = trefoil()
    for first in ("under", "over"):
        for second in ("under", "over"):
            after, e = add_kink(host, 0, 1, first, track=True)
            after = add_kink(after, e, -1, second)
            tag = f"R1:{first}-{second}"
            out.append(MovePair(tag, host.renamed(f"{tag}:before"), after.renamed(f"{tag}:after")))
    out.append(_word_pair("R1:braid", [("X", 1, 1), ("X", 1, 1)], [("K", 1, -1, "over"), ("X", 1, 1), ("K", 2, 1, "under"), ("X", 1, 1)], 2))
    return out


def _r4_pairs() -> list[MovePair]:
    """A curl slides through a merge vertex: it becomes a full twist of the two
    incoming bands, each carrying a curl of the same writhe."""
    out = []
    for s in (1, -1):
        for f in ("under", "over"):
            out.append(_word_pair(
                f"R4:{s:+d}{f}",
                [("M", 1), ("K", 1, s, f), ("S", 1)],
                [("K", 1, s, f), ("K", 2, s, f), ("X", 1, s), ("X", 1, s), ("M", 1), ("S", 1)],
                2,
            ))
    return out


def move_pairs() -> list[MovePair]:
    """Pairs (before, after) differing by one move, tagged R1 to R6 with a variant."""
    pairs = _r1_pairs()
    # R2: a strand pushed across its neighbour, parallel and antiparallel
    base = [("X", 1, 1), ("X", 1, 1)]
    for s in (1, -1):
        pairs.append(_word_pair(f"R2:parallel{s:+d}", base, [("X", 1, s), ("X", 1, -s)] + base, 2))
        pairs.append(_word_pair(f"R2:antiparallel{s:+d}", base, [("X", 1, s), ("X", 1, -s)] + base, 2, reverse=[0]))
    # R3 on a two-component closure; reversing either component gives the
    # orientation variants with one strand running against the other two
    for s in (1, -1):
        lhs = [("X", 1, s), ("X", 2, s), ("X", 1, s)]
        rhs = [("X", 2, s), ("X", 1, s), ("X", 2, s)]
        for rev in ((), (0,), (1,)):
            tag = f"R3:{s:+d}" + (f":rev{rev[0]}" if rev else "")
            pairs.append(_word_pair(tag, lhs, rhs, 3, rev))
    mixed_l = [("X", 1, 1), ("X", 2, 1), ("X", 1, -1)]
    mixed_r = [("X", 2, -1), ("X", 1, 1), ("X", 2, 1)]
    pairs.append(_word_pair("R3:mixed", mixed_l + [("X", 1, 1)], mixed_r + [("X", 1, 1)], 3))
    pairs.extend(_r4_pairs())
    # R5: a strand passes over or under a vertex
    for s in (1, -1):
        pairs.append(_word_pair(
            f"R5:merge-left{s:+d}",
            [("X", 1, s), ("X", 2, s), ("M", 1), ("S", 1)],
            [("M", 2), ("X", 1, s), ("S", 1)],
            3,
        ))
        pairs.append(_word_pair(
            f"R5:merge-right{s:+d}",
            [("X", 2, s), ("X", 1, s), ("M", 2), ("S", 2)],
            [("M", 1), ("X", 1, s), ("S", 2)],
            3,
        ))
        pairs.append(_word_pair(
            f"R5:split{s:+d}",
            [("M", 2), ("S", 2), ("X", 1, s), ("X", 2, s)],
            [("M", 2), ("X", 1, s), ("S", 1)],
            3,
        ))
    # R6: the IH move, for every way of orienting the middle edge
    pairs.append(_word_pair("R6:merges", [("M", 1), ("M", 1), ("S", 1), ("S", 1)], [("M", 2), ("M", 1), ("S", 1), ("S", 1)], 3))
    pairs.append(_word_pair("R6:splits", [("M", 1), ("M", 1), ("S", 1), ("S", 1)], [("M", 1), ("M", 1), ("S", 1), ("S", 2)], 3))
    pairs.append(_word_pair("R6:H-I-right", [("M", 1), ("S", 1), ("X", 1, 1)], [("S", 1), ("M", 2), ("X", 1, 1)], 2))
    pairs.append(_word_pair("R6:H-I-left", [("M", 1), ("S", 1), ("X", 1, 1)], [("S", 2), ("M", 1), ("X", 1, 1)], 2))
    return pairs
