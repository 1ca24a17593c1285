"""Y-oriented diagrams of spatial surfaces as combinatorial maps on S^2.

A diagram is a list of nodes.  A node is a crossing ("X", four ports) or a
trivalent vertex ("V", three ports); ports are listed counterclockwise.  Each
port holds a signed edge reference: ``e + 1`` when edge ``e`` arrives there
(its head) and ``-(e + 1)`` when it leaves (its tail).  At a crossing the
under strand uses ports 0 and 2 and the over strand ports 1 and 3::

                 1 (over)
                 |
    2 (under) ---+--- 0 (under)
                 |
                 3 (over)

The diagram describes the surface that thickens it, with the front side of
the surface facing the viewer.  A diagram without nodes is a single free
circle whose orientation is given by ``loops == (+1,)`` (counterclockwise)
or ``(-1,)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from ..algebra import Report, OK

DEGREE = {"X": 4, "V": 3}
FORMAT_VERSION = 1


@dataclass(frozen=True)
class SurfaceDiagram:
    kinds: tuple[str, ...]
    ports: tuple[tuple[int, ...], ...]
    loops: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def n_nodes(self) -> int:
        return len(self.kinds)

    @property
    def n_edges(self) -> int:
        return sum(len(p) for p in self.ports) // 2 if self.kinds else len(self.loops)

    def ends(self) -> tuple[list, list]:
        """tail[e] and head[e] as (node, port) pairs."""
        n = sum(len(p) for p in self.ports) // 2
        tail: list = [None] * n
        head: list = [None] * n
        for node, ps in enumerate(self.ports):
            for port, ref in enumerate(ps):
                e = abs(ref) - 1
                if ref > 0:
                    head[e] = (node, port)
                else:
                    tail[e] = (node, port)
        return tail, head

    def crossings(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == "X"]

    def vertices(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == "V"]

    def renamed(self, name: str) -> "SurfaceDiagram":
        return SurfaceDiagram(self.kinds, self.ports, self.loops, name)


Token = int | tuple[Hashable, int]


def from_code(nodes: Sequence[tuple[str, Sequence[Token]]], name: str = "", loops: Sequence[int] = ()) -> SurfaceDiagram:
    """Build a diagram from nodes given as (kind, ports).

    A port token is either a non-zero int (``+k`` edge k arrives, ``-k`` edge k
    leaves) or a pair ``(label, +1 | -1)`` with the same meaning.  Labels are
    renumbered in order of first appearance.
    """
    ids: dict = {}
    kinds, ports = [], []
    for kind, toks in nodes:
        if kind not in DEGREE:
            raise ValueError(f"unknown node kind {kind!r}")
        row = []
        for tok in toks:
            if isinstance(tok, tuple):
                label, sgn = tok
            else:
                if tok == 0:
                    raise ValueError("edge label 0 is not allowed")
                label, sgn = abs(tok), (1 if tok > 0 else -1)
            if sgn not in (1, -1):
                raise ValueError(f"bad direction {sgn}")
            e = ids.setdefault(label, len(ids))
            row.append(sgn * (e + 1))
        kinds.append(kind)
        ports.append(tuple(row))
    return SurfaceDiagram(tuple(kinds), tuple(ports), tuple(loops), name)


def to_code(d: SurfaceDiagram) -> list[tuple[str, list[tuple[int, int]]]]:
    """Nodes as (kind, [(edge, direction)]) with direction +1 = arrives."""
    return [(k, [(abs(r) - 1, 1 if r > 0 else -1) for r in ps]) for k, ps in zip(d.kinds, d.ports)]


def _trace_faces(d: SurfaceDiagram, tail, head):
    """Faces of the rotation system, keeping each face on the left.

    Returns (left_face, right_face, corner_face, n_faces); corner_face[n][k]
    is the face containing the corner between ports k and k+1 at node n.
    """
    n_edges = len(tail)
    left = [-1] * n_edges
    right = [-1] * n_edges
    corner = [[-1] * len(ps) for ps in d.ports]
    faces = 0
    for e0 in range(n_edges):
        for fwd0 in (True, False):
            if (left if fwd0 else right)[e0] >= 0:
                continue
            e, fwd = e0, fwd0
            while (left if fwd else right)[e] < 0:
                (left if fwd else right)[e] = faces
                node, port = head[e] if fwd else tail[e]
                deg = len(d.ports[node])
                out = (port - 1) % deg
                corner[node][out] = faces
                ref = d.ports[node][out]
                e = abs(ref) - 1
                fwd = ref < 0  # leaving through a tail means travelling forward
            faces += 1
    return left, right, corner, faces


def validate(d: SurfaceDiagram) -> Report:
    if not d.kinds:
        if len(d.loops) != 1 or d.loops[0] not in (1, -1):
            return Report(False, "loops", None, "a node-free diagram must be exactly one oriented circle")
        return OK
    if d.loops:
        return Report(False, "loops", None, "free circles are only supported as the whole diagram")
    if len(d.kinds) != len(d.ports):
        return Report(False, "shape", None, "kinds and ports differ in length")
    seen_in: dict = {}
    seen_out: dict = {}
    for node, (kind, ps) in enumerate(zip(d.kinds, d.ports)):
        if kind not in DEGREE:
            return Report(False, "kind", (node,), f"unknown kind {kind!r}")
        if len(ps) != DEGREE[kind]:
            return Report(False, "degree", (node,), f"{kind} node with {len(ps)} ports")
        for port, ref in enumerate(ps):
            if ref == 0:
                return Report(False, "port", (node, port), "empty port")
            book = seen_in if ref > 0 else seen_out
            if abs(ref) in book:
                return Report(False, "port", (node, port), f"edge end {ref} used twice")
            book[abs(ref)] = (node, port)
    if set(seen_in) != set(seen_out):
        return Report(False, "edges", None, "some edge is missing an end")
    if sorted(seen_in) != list(range(1, len(seen_in) + 1)):
        return Report(False, "edges", None, "edge ids are not contiguous")
    for node, (kind, ps) in enumerate(zip(d.kinds, d.ports)):
        if kind == "X":
            for a, b in ((0, 2), (1, 3)):
                if (ps[a] > 0) == (ps[b] > 0):
                    return Report(False, "strand", (node, a, b), "strand through a crossing is not consistently oriented")
        else:
            ins = sum(1 for r in ps if r > 0)
            if ins == 0:
                return Report(False, "source vertex", (node,), "vertex with three outgoing edges")
            if ins == 3:
                return Report(False, "sink vertex", (node,), "vertex with three incoming edges")
    tail, head = d.ends()
    # connectivity of the underlying graph
    adj: dict = {i: set() for i in range(d.n_nodes)}
    for t, h in zip(tail, head):
        adj[t[0]].add(h[0])
        adj[h[0]].add(t[0])
    stack, reached = [0], {0}
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in reached:
                reached.add(nb)
                stack.append(nb)
    if len(reached) != d.n_nodes:
        return Report(False, "connectivity", None, "diagram is split")
    _, _, _, faces = _trace_faces(d, tail, head)
    euler = d.n_nodes - len(tail) + faces
    if euler != 2:
        return Report(False, "euler", (euler,), f"V - E + F = {euler}, not a sphere")
    return OK


@dataclass(frozen=True)
class CrossingInfo:
    node: int
    sign: int
    src: int  # under semiarc coloured x (on the right of the over strand)
    dst: int  # under semiarc coloured x * y
    over: int  # an over semiarc (the other one is in the same arc)
    rho: int  # region from which both strands' normals point


@dataclass(frozen=True)
class VertexInfo:
    node: int
    sign: int  # +1 for two incoming edges, -1 for two outgoing
    w1: int
    w2: int
    w3: int  # the edge carrying the product w1 w2
    rho: int


@dataclass(frozen=True)
class DerivedStructure:
    tail: tuple
    head: tuple
    left_face: tuple[int, ...]
    right_face: tuple[int, ...]
    corner_face: tuple[tuple[int, ...], ...]
    n_faces: int
    arc_of_edge: tuple[int, ...]
    n_arcs: int
    crossings: tuple[CrossingInfo, ...]
    vertices: tuple[VertexInfo, ...]

    @property
    def n_edges(self) -> int:
        return len(self.arc_of_edge)

    def arc_edges(self, arc: int) -> list[int]:
        return [e for e, a in enumerate(self.arc_of_edge) if a == arc]

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)


def derive(d: SurfaceDiagram) -> DerivedStructure:
    rep = validate(d)
    if not rep:
        raise ValueError(f"invalid diagram: {rep}")
    if not d.kinds:
        left, right = (0, 1) if d.loops[0] == 1 else (1, 0)
        return DerivedStructure((None,), (None,), (left,), (right,), (), 2, (0,), 1, (), ())
    tail, head = d.ends()
    left, right, corner, n_faces = _trace_faces(d, tail, head)
    n_edges = len(tail)
    parent = list(range(n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    crossings, vertices = [], []
    for node, (kind, ps) in enumerate(zip(d.kinds, d.ports)):
        edge = [abs(r) - 1 for r in ps]
        if kind == "X":
            parent[find(edge[1])] = find(edge[3])
            o_in = 1 if ps[1] > 0 else 3
            u_in = 0 if ps[0] > 0 else 2
            sign = 1 if u_in == (o_in + 1) % 4 else -1
            src = edge[(o_in + 1) % 4]
            dst = edge[(o_in - 1) % 4]
            if sign > 0:
                rho = corner[node][(o_in + 1) % 4]
                over = edge[(o_in + 2) % 4]
            else:
                rho = corner[node][o_in]
                over = edge[o_in]
            crossings.append(CrossingInfo(node, sign, src, dst, over, rho))
        else:
            incoming = [p for p in range(3) if ps[p] > 0]
            if len(incoming) == 2:
                s = next(p for p in range(3) if ps[p] < 0)
                info = VertexInfo(node, 1, edge[(s - 1) % 3], edge[(s + 1) % 3], edge[s], corner[node][(s - 1) % 3])
            else:
                s = incoming[0]
                info = VertexInfo(node, -1, edge[(s + 1) % 3], edge[(s - 1) % 3], edge[s], corner[node][s])
            vertices.append(info)
    roots: dict = {}
    arc_of_edge = tuple(roots.setdefault(find(e), len(roots)) for e in range(n_edges))
    return DerivedStructure(
        tuple(tail),
        tuple(head),
        tuple(left),
        tuple(right),
        tuple(tuple(c) for c in corner),
        n_faces,
        arc_of_edge,
        len(roots),
        tuple(crossings),
        tuple(vertices),
    )


def to_json(d: SurfaceDiagram) -> dict[str, Any]:
    if not d.kinds:
        return {"version": FORMAT_VERSION, "name": d.name, "nodes": [], "half_edges": [], "loops": [{"orientation": s} for s in d.loops]}
    tail, head = d.ends()
    nodes = []
    for kind, ps in zip(d.kinds, d.ports):
        entry: dict[str, Any] = {"kind": "crossing" if kind == "X" else "vertex", "rotation": [abs(r) - 1 for r in ps]}
        if kind == "X":
            entry["over"] = [1, 3]
        nodes.append(entry)
    edges = [{"from": list(t), "to": list(h), "oriented": True} for t, h in zip(tail, head)]
    return {"version": FORMAT_VERSION, "name": d.name, "nodes": nodes, "half_edges": edges, "loops": []}


def from_json(data: dict) -> SurfaceDiagram:
    if data.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported diagram format version {data.get('version')!r}")
    nodes = data["nodes"]
    kinds = []
    rows: list[list[int]] = []
    for node in nodes:
        kind = {"crossing": "X", "vertex": "V"}.get(node["kind"])
        if kind is None:
            raise ValueError(f"unknown node kind {node['kind']!r}")
        if kind == "X" and sorted(node.get("over", [1, 3])) != [1, 3]:
            raise ValueError("over strand must use ports 1 and 3")
        kinds.append(kind)
        rows.append([0] * DEGREE[kind])
    for e, he in enumerate(data["half_edges"]):
        (tn, tp), (hn, hp) = he["from"], he["to"]
        if not he.get("oriented", True):
            (tn, tp), (hn, hp) = (hn, hp), (tn, tp)
        if rows[tn][tp] or rows[hn][hp]:
            raise ValueError(f"port reused by edge {e}")
        rows[tn][tp] = -(e + 1)
        rows[hn][hp] = e + 1
    for node, (row, entry) in enumerate(zip(rows, nodes)):
        if [abs(r) - 1 for r in row] != list(entry["rotation"]):
            raise ValueError(f"rotation of node {node} disagrees with the edge list")
    loops = tuple(int(lp["orientation"]) for lp in data.get("loops", []))
    return SurfaceDiagram(tuple(kinds), tuple(tuple(r) for r in rows), loops, data.get("name", ""))


def dumps(d: SurfaceDiagram) -> str:
    return json.dumps(to_json(d), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> SurfaceDiagram:
    return from_json(json.loads(text))


def describe(d: SurfaceDiagram) -> str:
    """Plain-text summary of the derived structure."""
    ds = derive(d)
    lines = [
        f"diagram {d.name or '(unnamed)'}: {len(d.crossings())} crossings, {len(d.vertices())} vertices,"
        f" {ds.n_edges} semiarcs, {ds.n_arcs} arcs, {ds.n_faces} regions, writhe {ds.writhe()}",
    ]
    for c in ds.crossings:
        lines.append(
            f"  crossing n{c.node} {'+' if c.sign > 0 else '-'}: under arc {ds.arc_of_edge[c.src]} -> {ds.arc_of_edge[c.dst]}"
            f" over arc {ds.arc_of_edge[c.over]}, region {c.rho}"
        )
    for v in ds.vertices:
        lines.append(
            f"  vertex n{v.node} {'+' if v.sign > 0 else '-'}: arcs {ds.arc_of_edge[v.w1]} . {ds.arc_of_edge[v.w2]}"
            f" = {ds.arc_of_edge[v.w3]}, region {v.rho}"
        )
    return "\n".join(lines)
