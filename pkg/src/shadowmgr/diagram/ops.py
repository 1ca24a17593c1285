"""Transforms and surgery on diagrams.

Surgery works on the code form (see ``from_code``): edges are relabelled with
fresh hashable labels, nodes are inserted, and the result is rebuilt.
"""
from __future__ import annotations

import itertools

from .model import SurfaceDiagram, derive, from_code, to_code, validate

_fresh = itertools.count()


def _check(d: SurfaceDiagram) -> SurfaceDiagram:
    rep = validate(d)
    if not rep:
        raise ValueError(f"surgery produced an invalid diagram: {rep}")
    return d


def switch(d: SurfaceDiagram) -> SurfaceDiagram:
    """Exchange over and under at every crossing (rotate port labels by one)."""
    ports = tuple(ps[1:] + ps[:1] if k == "X" else ps for k, ps in zip(d.kinds, d.ports))
    return SurfaceDiagram(d.kinds, ports, d.loops, d.name)


def reflect(d: SurfaceDiagram) -> SurfaceDiagram:
    """Planar reflection (x, y) -> (-x, y): every rotation is reversed.

    Port 0 stays port 0, so over/under assignments are kept.
    """
    ports = tuple(tuple(ps[-i % len(ps)] for i in range(len(ps))) for ps in d.ports)
    return SurfaceDiagram(d.kinds, ports, tuple(-s for s in d.loops), d.name)


def reverse(d: SurfaceDiagram) -> SurfaceDiagram:
    """Reverse the orientation of every edge."""
    ports = tuple(tuple(-r for r in ps) for ps in d.ports)
    return SurfaceDiagram(d.kinds, ports, tuple(-s for s in d.loops), d.name)


def mirror(d: SurfaceDiagram) -> SurfaceDiagram:
    """Diagram of the mirror image F* (reflection through the projection plane)."""
    return switch(d)


def invert_surface(d: SurfaceDiagram) -> SurfaceDiagram:
    """Diagram of -F: the surface turned over by a half rotation in space,
    so the former back side faces the viewer."""
    return reflect(switch(d))


def minus_star(d: SurfaceDiagram) -> SurfaceDiagram:
    """The diagram -D*: planar reflection followed by reversing every edge."""
    return reverse(reflect(d))


def strand_edges(d: SurfaceDiagram, edge: int) -> list[int] | None:
    """Edges of the closed strand through ``edge`` if it meets no vertex, else None."""
    if not d.kinds:
        return [0]
    tail, head = d.ends()
    out, e = [], edge
    while True:
        out.append(e)
        node, port = head[e]
        if d.kinds[node] != "X":
            return None
        e = abs(d.ports[node][(port + 2) % 4]) - 1
        if e == edge:
            return out


def reverse_s1(d: SurfaceDiagram, edge: int = 0) -> SurfaceDiagram:
    """Reverse the orientation of the circle component through ``edge``.

    Only components made of crossings alone (annulus cores) can be reversed."""
    if not d.kinds:
        return SurfaceDiagram((), (), tuple(-s for s in d.loops), d.name)
    comp = strand_edges(d, edge)
    if comp is None:
        raise ValueError("the component through this edge contains a vertex")
    flip = {e + 1 for e in comp}
    ports = tuple(tuple(-r if abs(r) in flip else r for r in ps) for ps in d.ports)
    return _check(SurfaceDiagram(d.kinds, ports, d.loops, d.name))


def _labelled(d: SurfaceDiagram, tag):
    """Code form with edge labels (tag, e)."""
    return [(k, [((tag, e), s) for e, s in row]) for k, row in to_code(d)]


def _split_edge(nodes, label, pieces):
    """Rename the leaving end of edge ``label`` to ``pieces[0]`` and its
    arriving end to ``pieces[-1]``."""
    out = []
    for kind, row in nodes:
        new = []
        for lab, s in row:
            if lab == label:
                lab = pieces[0] if s < 0 else pieces[-1]
            new.append((lab, s))
        out.append((kind, new))
    return out


def _side_vertex(before, after, third, side, third_dir):
    """Vertex on a band running before -> after with a third edge on one side.

    Ports are listed counterclockwise starting at the arriving band piece.
    """
    if side == "right":
        return ("V", [(before, 1), (third, third_dir), (after, -1)])
    return ("V", [(before, 1), (after, -1), (third, third_dir)])


def _vertex_maker(third, side, direction):
    return lambda before, after: _side_vertex(before, after, third, side, direction)


def _pieces(d: SurfaceDiagram, edge: int, k: int):
    """Split ``edge`` for k new nodes; returns (nodes, pieces).

    On a free circle the pieces close up into a cycle through the new nodes.
    """
    tag = next(_fresh)
    if d.kinds:
        pieces = [(tag, "p", i) for i in range(k + 1)]
        return _split_edge(_labelled(d, tag), (tag, edge), pieces), pieces
    return [], [(tag, "p", i) for i in range(k)] + [(tag, "p", 0)]


def _edge_index(nodes, label) -> int:
    """Index ``from_code`` gives to ``label`` (labels are numbered by first appearance)."""
    ids: dict = {}
    for _, row in nodes:
        for lab, _s in row:
            ids.setdefault(lab, len(ids))
    return ids[label]


def along(d: SurfaceDiagram, edge: int, makers, extra_nodes=(), name: str | None = None, track: bool = False):
    """Place one new node per maker along ``edge``.

    ``makers[i](before, after)`` returns the node sitting between pieces i and
    i+1.  ``extra_nodes`` are appended unchanged.  With ``track`` the index of
    the first piece (which stays on the arc of ``edge``) is returned as well.
    """
    nodes, pieces = _pieces(d, edge, len(makers))
    for i, make in enumerate(makers):
        nodes.append(make(pieces[i], pieces[i + 1]))
    nodes.extend(extra_nodes)
    out = _check(from_code(nodes, name=d.name if name is None else name))
    return (out, _edge_index(nodes, pieces[0])) if track else out


def add_puncture(d: SurfaceDiagram, edge: int = 0, side: str = "right") -> SurfaceDiagram:
    """Attach a crossingless ear to ``edge``: removes one more disk from the surface."""
    ear = ("ear", next(_fresh))
    return along(d, edge, [_vertex_maker(ear, side, -1), _vertex_maker(ear, side, 1)], name=f"{d.name}°")


def add_meridian(d: SurfaceDiagram, edge: int = 0, under: bool = True) -> SurfaceDiagram:
    """Attach a chord that leaves ``edge`` on the right, passes once across the
    edge just ahead (under it by default) and returns on the left::

            |
        +---C---+        C: band over chord
        |   |   |
        |  v2 <-+        chord arrives from the left
        |   |
        +->v1            chord leaves to the right
            |
    """
    t = next(_fresh)
    m1, m2 = ("m1", t), ("m2", t)

    def crossing(before, after):
        # counterclockwise from the east: chord in, band out (north), chord out, band in (south)
        ports = [(m1, 1), (after, -1), (m2, -1), (before, 1)]
        return ("X", ports if under else ports[1:] + ports[:1])

    makers = [_vertex_maker(m1, "right", -1), _vertex_maker(m2, "left", 1), crossing]
    return along(d, edge, makers)


def add_handle(d: SurfaceDiagram, edge: int = 0, track: bool = False):
    """Boundary-sum a standard punctured torus onto the right of ``edge``.

    Four vertices v1..v4 are placed along the edge; chord A runs v1 -> v3 and
    chord B runs v2 -> v4, both on the right, and A passes over B once::

        v4 <------ B2 ------+
        v3 <-- A2 --+      |
        v2 -- B1 ---|------+   (B under A)
        v1 -- A1 ---+

    With ``track`` also returns the edge that continues the arc of ``edge``.
    """
    t = next(_fresh)
    a1, a2, b1, b2 = (("A1", t), ("A2", t), ("B1", t), ("B2", t))
    makers = [
        _vertex_maker(a1, "right", -1),
        _vertex_maker(b1, "right", -1),
        _vertex_maker(a2, "right", 1),
        _vertex_maker(b2, "right", 1),
    ]
    # counterclockwise from the east: B leaves, A leaves (north), B arrives (west), A arrives (south)
    chi = ("X", [(b2, -1), (a2, -1), (b1, 1), (a1, 1)])
    return along(d, edge, makers, [chi], name=f"{d.name}#O1", track=track)


def boundary_sum(d1: SurfaceDiagram, e1: int, d2: SurfaceDiagram, e2: int, side1: str = "right", side2: str = "right") -> SurfaceDiagram:
    """Join two diagrams by a single bridge from edge e1 of d1 to edge e2 of d2."""
    bridge = ("bridge", next(_fresh))
    n1, p1 = _pieces(d1, e1, 1)
    n2, p2 = _pieces(d2, e2, 1)
    nodes = n1 + [_side_vertex(p1[0], p1[1], bridge, side1, -1)]
    nodes += n2 + [_side_vertex(p2[0], p2[1], bridge, side2, 1)]
    return _check(from_code(nodes, name=f"{d1.name}~{d2.name}"))


def connect_sum(
    d1: SurfaceDiagram,
    e1: int,
    d2: SurfaceDiagram,
    e2: int,
    closed: tuple[bool, bool] = (False, False),
) -> SurfaceDiagram:
    """Diagram of the connected sum.

    A diagram of a closed surface F is read as a diagram of F minus a disk.
    If either summand is closed a single bridge suffices; otherwise the
    bridge is followed by a puncture so that exactly one disk is removed from
    each summand.
    """
    out = boundary_sum(d1, e1, d2, e2)
    if not any(closed):
        out = add_puncture(out, 0)
    return out.renamed(f"{d1.name}#{d2.name}")


def relabel(d: SurfaceDiagram, order: list[int]) -> SurfaceDiagram:
    """Permute nodes: new node i is old node order[i]; edges are renumbered."""
    code = to_code(d)
    return from_code([code[i] for i in order], name=d.name)


def _kink_node(before, after, loop, sign: int, first: str):
    # ports {0, 2} carry the under pass; the loop joins two adjacent ports
    if first == "under":
        if sign > 0:
            return ("X", [(before, 1), (after, -1), (loop, -1), (loop, 1)])
        return ("X", [(before, 1), (loop, 1), (loop, -1), (after, -1)])
    if sign > 0:
        return ("X", [(loop, 1), (loop, -1), (after, -1), (before, 1)])
    return ("X", [(loop, 1), (before, 1), (after, -1), (loop, -1)])


def add_kink(d: SurfaceDiagram, edge: int = 0, sign: int = 1, first: str = "under", track: bool = False):
    """Insert a curl of the given writhe into ``edge``; ``first`` says whether
    the strand first passes under or over itself."""
    if first not in ("under", "over"):
        raise ValueError("first must be 'under' or 'over'")
    loop = ("kink", next(_fresh))
    return along(d, edge, [lambda b, a: _kink_node(b, a, loop, sign, first)], track=track)
