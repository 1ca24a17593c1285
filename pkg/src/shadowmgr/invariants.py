"""Colourings of Y-oriented diagrams and the shadow cocycle invariants.

Arc colours are searched by depth-first search with propagation: a crossing
with known under-in and over colours forces the under-out colour (and the
reverse direction via the inverse table), and a vertex with two known
colours forces the third.  Region colours follow from one seed region.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

import numpy as np

from .chains import Chain, ChainContext, gen
from .cocycles import Cochain2
from .diagram.model import DerivedStructure, SurfaceDiagram, derive
from .mgr import AssociatedMGR, FiniteMGR, XSetAction


@dataclass(frozen=True)
class Coloring:
    arc_colors: tuple[int, ...]
    region_colors: tuple[int, ...]


@dataclass(frozen=True)
class InvariantMultiset:
    modulus: int
    counts: tuple[tuple[int, int], ...]  # sorted (value, multiplicity), zero multiplicities dropped

    @classmethod
    def from_counter(cls, modulus: int, counter: dict) -> "InvariantMultiset":
        acc: Counter = Counter()
        for v, k in counter.items():
            acc[int(v) % modulus] += int(k)
        return cls(modulus, tuple(sorted((v, k) for v, k in acc.items() if k)))

    @property
    def total(self) -> int:
        return sum(k for _, k in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __getitem__(self, value: int) -> int:
        return self.as_dict().get(value % self.modulus, 0)

    def __add__(self, other: "InvariantMultiset") -> "InvariantMultiset":
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        return InvariantMultiset.from_counter(self.modulus, Counter(self.as_dict()) + Counter(other.as_dict()))

    def to_json(self) -> dict[str, int]:
        return {str(v): k for v, k in self.counts}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v}_{k}" for v, k in self.counts) + "}"


def negate(m: InvariantMultiset) -> InvariantMultiset:
    return InvariantMultiset.from_counter(m.modulus, {(-v) % m.modulus: k for v, k in m.counts})


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: int | None = None
    left: int = 0
    right: int = 0

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        if self.equal:
            return "equal"
        return f"distinct at value {self.witness}: {self.left} != {self.right}"


def compare(m1: InvariantMultiset, m2: InvariantMultiset) -> Comparison:
    if m1.modulus != m2.modulus:
        raise ValueError("moduli differ")
    a, b = m1.as_dict(), m2.as_dict()
    for v in sorted(set(a) | set(b)):
        if a.get(v, 0) != b.get(v, 0):
            return Comparison(False, v, a.get(v, 0), b.get(v, 0))
    return Comparison(True)


def gcd_of(z_parts: Iterable[int], kappa: int) -> int:
    """gcd of Z_kappa parts read in 1..kappa (0 counts as kappa), together with kappa."""
    g = kappa
    for z in z_parts:
        g = math.gcd(g, int(z) % kappa or kappa)
    return g


@dataclass
class Filters:
    """Restrictions on the colourings that contribute.

    gcd: the gcd must be one of these values (associated MGRs only).
    arc: the marked arc; arc_q: allowed Q-parts of its colour.
    """

    gcd: tuple[int, ...] | None = None
    arc: int | None = None
    arc_q: tuple[int, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.gcd is not None:
            out["gcd"] = list(self.gcd)
        if self.arc is not None:
            out["arc"] = self.arc
            if self.arc_q is not None:
                out["q"] = list(self.arc_q)
        return out


class ColoringProblem:
    """Precomputed tables for enumerating the colourings of one diagram."""

    def __init__(self, ds: DerivedStructure, mgr: FiniteMGR, xset: XSetAction, filters: Filters | None = None):
        self.ds = ds
        self.mgr = mgr
        self.xset = xset
        self.filters = filters or Filters()
        N = mgr.size
        self.N = N
        op = mgr.op
        invop = np.empty_like(op)
        invop[op, np.arange(N)[None, :]] = np.arange(N)[:, None]
        self.op = op.tolist()
        self.invop = invop.tolist()
        self.mul = mgr.mul.tolist()
        self.inv = mgr.inverse.tolist()
        self.act = xset.act.tolist()
        act_inv = np.empty_like(xset.act)
        act_inv[xset.act, np.arange(N)[None, :]] = np.arange(xset.size)[:, None]
        self.act_inv = act_inv.tolist()
        arc = ds.arc_of_edge
        self.n_arcs = ds.n_arcs
        # constraints: ("X", src, over, dst) means dst = src * over; ("V", a, b, c) means c = a b
        cons = [("X", arc[c.src], arc[c.over], arc[c.dst]) for c in ds.crossings]
        cons += [("V", arc[v.w1], arc[v.w2], arc[v.w3]) for v in ds.vertices]
        self.constraints = cons
        self.watch: list[list[int]] = [[] for _ in range(self.n_arcs)]
        for i, (_, a, b, c) in enumerate(cons):
            for x in {a, b, c}:
                self.watch[x].append(i)
        self.order = self._branch_order()
        self.allowed = self._domains()
        # region propagation: a spanning tree over faces, rooted at face 0
        self.face_steps = self._face_tree()

    def _branch_order(self) -> list[int]:
        # breadth-first over the constraint graph, starting from arc 0
        seen = [False] * self.n_arcs
        order = []
        for start in range(self.n_arcs):
            if seen[start]:
                continue
            queue = [start]
            seen[start] = True
            while queue:
                a = queue.pop(0)
                order.append(a)
                for ci in self.watch[a]:
                    for b in self.constraints[ci][1:]:
                        if not seen[b]:
                            seen[b] = True
                            queue.append(b)
        return order

    def _domains(self) -> list[list[bool] | None]:
        f = self.filters
        allowed: list = [None] * self.n_arcs
        if f.gcd is not None:
            m = self.mgr
            if not isinstance(m, AssociatedMGR):
                raise ValueError("gcd filters need an associated MGR")
            # every admissible gcd is a multiple of g0, so each Z-part is too
            g0 = 0
            for v in f.gcd:
                g0 = math.gcd(g0, v)
            mask = [(x % m.kappa) % g0 == 0 for x in range(self.N)]
            allowed = [list(mask) for _ in range(self.n_arcs)]
        if f.arc is not None:
            if not 0 <= f.arc < self.n_arcs:
                raise ValueError(f"filter references unknown arc {f.arc}")
            if f.arc_q is not None:
                m = self.mgr
                if not isinstance(m, AssociatedMGR):
                    raise ValueError("arc class filters need an associated MGR")
                qs = set(f.arc_q)
                base = allowed[f.arc] or [True] * self.N
                allowed[f.arc] = [ok and (x // m.kappa) in qs for x, ok in enumerate(base)]
        return allowed

    def _face_tree(self):
        ds = self.ds
        n_faces = ds.n_faces
        adj: list[list] = [[] for _ in range(n_faces)]
        for e in range(ds.n_edges):
            l, r = ds.left_face[e], ds.right_face[e]
            adj[r].append((e, l, True))  # left = right ★ c(e)
            adj[l].append((e, r, False))
        steps = []
        seen = [False] * n_faces
        seen[0] = True
        queue = [0]
        while queue:
            f = queue.pop(0)
            for e, g, forward in adj[f]:
                if not seen[g]:
                    seen[g] = True
                    steps.append((f, g, self.ds.arc_of_edge[e], forward))
                    queue.append(g)
        if not all(seen):
            raise ValueError("region graph is disconnected")
        return steps

    # -- arc colours -------------------------------------------------------

    def _assign(self, colors: list[int], arc: int, value: int, trail: list[int]) -> bool:
        allowed = self.allowed[arc]
        if allowed is not None and not allowed[value]:
            return False
        colors[arc] = value
        trail.append(arc)
        return self._propagate(colors, arc, trail)

    def _propagate(self, colors: list[int], start: int, trail: list[int]) -> bool:
        op, invop, mul, inv, comp = self.op, self.invop, self.mul, self.inv, None
        cons, watch = self.constraints, self.watch
        stack = [start]
        while stack:
            arc = stack.pop()
            for ci in watch[arc]:
                kind, a, b, c = cons[ci]
                ca, cb, cc = colors[a], colors[b], colors[c]
                if kind == "X":
                    # c = a * b
                    if ca >= 0 and cb >= 0:
                        want = op[ca][cb]
                        if cc >= 0:
                            if cc != want:
                                return False
                            continue
                        target, value = c, want
                    elif cc >= 0 and cb >= 0:
                        target, value = a, invop[cc][cb]
                    else:
                        continue
                else:
                    # c = a b within one component
                    if ca >= 0 and cb >= 0:
                        want = mul[ca][cb]
                        if want < 0:
                            return False
                        if cc >= 0:
                            if cc != want:
                                return False
                            continue
                        target, value = c, want
                    elif ca >= 0 and cc >= 0:
                        value = mul[inv[ca]][cc]
                        if value < 0:
                            return False
                        target = b
                    elif cb >= 0 and cc >= 0:
                        value = mul[cc][inv[cb]]
                        if value < 0:
                            return False
                        target = a
                    else:
                        continue
                current = colors[target]
                if current >= 0:
                    if current != value:
                        return False
                    continue
                allowed = self.allowed[target]
                if allowed is not None and not allowed[value]:
                    return False
                colors[target] = value
                trail.append(target)
                stack.append(target)
        return True

    def candidates(self, arc: int) -> list[int]:
        allowed = self.allowed[arc]
        return [x for x in range(self.N) if allowed is None or allowed[x]]

    def arc_colorings(self, first_values: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
        """All arc colourings, each once, in a fixed order.

        ``first_values`` restricts the colour of the first branching arc,
        which is how work is split between processes.
        """
        colors = [-1] * self.n_arcs
        order = self.order
        n = self.n_arcs

        def rec(pos: int):
            while pos < n and colors[order[pos]] >= 0:
                pos += 1
            if pos == n:
                yield tuple(colors)
                return
            arc = order[pos]
            values = self.candidates(arc)
            if pos == 0 and first_values is not None:
                values = [v for v in first_values if v in set(values)]
            for value in values:
                trail: list[int] = []
                if self._assign(colors, arc, value, trail):
                    yield from rec(pos + 1)
                for t in trail:
                    colors[t] = -1

        yield from rec(0)

    # -- regions ------------------------------------------------------------

    def regions_from(self, arcs: tuple[int, ...], seed: int) -> tuple[int, ...] | None:
        ds = self.ds
        regions = [-1] * ds.n_faces
        regions[0] = seed
        act, act_inv = self.act, self.act_inv
        for f, g, arc, forward in self.face_steps:
            regions[g] = act[regions[f]][arcs[arc]] if forward else act_inv[regions[f]][arcs[arc]]
        arc_of = ds.arc_of_edge
        for e in range(ds.n_edges):
            if regions[ds.left_face[e]] != act[regions[ds.right_face[e]]][arcs[arc_of[e]]]:
                return None
        return tuple(regions)

    def colorings(self, first_values=None, seeds: Sequence[int] | None = None) -> Iterator[Coloring]:
        seeds = range(self.xset.size) if seeds is None else seeds
        for arcs in self.arc_colorings(first_values):
            if not self._post_filter(arcs):
                continue
            for s in seeds:
                regions = self.regions_from(arcs, s)
                if regions is not None:
                    yield Coloring(arcs, regions)

    def _post_filter(self, arcs) -> bool:
        f = self.filters
        if f.gcd is None:
            return True
        m = self.mgr
        return gcd_of((x % m.kappa for x in arcs), m.kappa) in f.gcd

    # -- weights ------------------------------------------------------------

    def weight(self, c: Coloring) -> Chain:
        """W(D; c) as an explicit 2-chain."""
        ds, arc = self.ds, self.ds.arc_of_edge
        terms = []
        for x in ds.crossings:
            g = gen(c.region_colors[x.rho], (c.arc_colors[arc[x.src]],), (c.arc_colors[arc[x.over]],))
            terms.append((g, x.sign))
        for v in ds.vertices:
            g = gen(c.region_colors[v.rho], (c.arc_colors[arc[v.w1]], c.arc_colors[arc[v.w2]]))
            terms.append((g, v.sign))
        return Chain(terms, 2)

    def weight_value(self, c: Coloring, pair: list, block: list, modulus: int) -> int:
        ds, arc = self.ds, self.ds.arc_of_edge
        a, r = c.arc_colors, c.region_colors
        total = 0
        for x in ds.crossings:
            total += x.sign * pair[r[x.rho]][a[arc[x.src]]][a[arc[x.over]]]
        if block is not None:
            for v in ds.vertices:
                total += v.sign * block[r[v.rho]][a[arc[v.w1]]][a[arc[v.w2]]]
        return total % modulus


def _resolve(d, mgr, xset, filters):
    ds = derive(d) if isinstance(d, SurfaceDiagram) else d
    return ColoringProblem(ds, mgr, xset, filters)


def enumerate_colorings(
    d: SurfaceDiagram | DerivedStructure,
    mgr: FiniteMGR,
    xset: XSetAction,
    filters: Filters | None = None,
    predicate: Callable[[Coloring], bool] | None = None,
) -> Iterator[Coloring]:
    problem = _resolve(d, mgr, xset, filters)
    for c in problem.colorings():
        if predicate is None or predicate(c):
            yield c


def count_colorings(d, mgr: FiniteMGR, xset: XSetAction, filters: Filters | None = None) -> int:
    problem = _resolve(d, mgr, xset, filters)
    return sum(1 for _ in problem.colorings())


def count_arc_colorings(d, mgr: FiniteMGR, filters: Filters | None = None) -> int:
    """Colourings of arcs alone (the X-set is taken trivial)."""
    from .mgr import trivial_xset

    problem = _resolve(d, mgr, trivial_xset(mgr), filters)
    return sum(1 for a in problem.arc_colorings() if problem._post_filter(a))


def weight(d, mgr: FiniteMGR, xset: XSetAction, c: Coloring) -> Chain:
    return _resolve(d, mgr, xset, None).weight(c)


def _phi_chunk(problem: ColoringProblem, theta: Cochain2, first_values, debug: bool) -> tuple[dict, int]:
    pair = theta.pair_values.tolist()
    block = theta.block_values.tolist() if theta.block_values is not None else None
    counts: Counter = Counter()
    n = 0
    ctx = ChainContext(problem.mgr, problem.xset) if debug else None
    for c in problem.colorings(first_values):
        value = problem.weight_value(c, pair, block, theta.modulus)
        if debug:
            w = problem.weight(c)
            if not ctx.is_cycle(w):
                raise AssertionError(f"weight of colouring {c} is not a cycle")
            from .chains import evaluate

            if evaluate(theta, w) != value:
                raise AssertionError("fast weight evaluation disagrees with the chain")
        counts[value] += 1
        n += 1
    return dict(counts), n


@dataclass
class PhiResult:
    multiset: InvariantMultiset
    colorings: int
    elapsed_ms: float
    filters: Filters = field(default_factory=Filters)

    def to_json(self, diagram: str = "", cocycle: dict | None = None) -> dict[str, Any]:
        return {
            "diagram": diagram,
            "cocycle": cocycle or {},
            "filters": self.filters.to_json(),
            "multiset": self.multiset.to_json(),
            "colorings": self.colorings,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }


def phi(
    d: SurfaceDiagram | DerivedStructure,
    theta: Cochain2,
    mgr: FiniteMGR,
    xset: XSetAction,
    filters: Filters | None = None,
    threads: int = 1,
    debug: bool = False,
) -> PhiResult:
    """The multiset of theta(W(D; c)) over the colourings passing the filters."""
    if theta.pair_values.shape != (xset.size, mgr.size, mgr.size):
        raise ValueError("cochain does not match the MGR and X-set")
    start = time.perf_counter()
    filters = filters or Filters()
    problem = _resolve(d, mgr, xset, filters)
    if threads <= 1 or problem.n_arcs == 0:
        counts, n = _phi_chunk(problem, theta, None, debug)
    else:
        values = problem.candidates(problem.order[0])
        chunks = [values[i::threads] for i in range(threads)]
        counts, n = Counter(), 0
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_phi_chunk, problem, theta, ch, debug) for ch in chunks if ch]
            for fut in futures:
                c, k = fut.result()
                counts.update(c)
                n += k
    ms = (time.perf_counter() - start) * 1000
    return PhiResult(InvariantMultiset.from_counter(theta.modulus, counts), n, ms, filters)


def arc_class_counts(
    d, mgr: AssociatedMGR, arc: int, gcds: Sequence[int] | None = None
) -> dict[int, int]:
    """Number of arc colourings per Q-part of the marked arc."""
    from .mgr import trivial_xset

    problem = _resolve(d, mgr, trivial_xset(mgr), Filters(gcd=tuple(gcds) if gcds else None))
    out: Counter = Counter()
    for arcs in problem.arc_colorings():
        if problem._post_filter(arcs):
            out[arcs[arc] // mgr.kappa] += 1
    return dict(sorted(out.items()))


def mirror_coloring(d: SurfaceDiagram, c: Coloring) -> Coloring:
    """The colouring c* of -D* matching c on D.

    -D* has the same nodes and edges as D.  Reflection and reversal together
    keep the normal orientation of every semiarc, so every arc keeps its
    colour; corner k at a node of degree n corresponds to corner -k-1.
    """
    from .diagram.ops import minus_star

    ds, dm = derive(d), derive(minus_star(d))
    arcs = [0] * dm.n_arcs
    for e in range(ds.n_edges):
        arcs[dm.arc_of_edge[e]] = c.arc_colors[ds.arc_of_edge[e]]
    regions = [0] * dm.n_faces
    for node, ps in enumerate(d.ports):
        n = len(ps)
        for k in range(n):
            regions[dm.corner_face[node][(-k - 1) % n]] = c.region_colors[ds.corner_face[node][k]]
    if not d.ports:
        regions = list(reversed(c.region_colors))
    return Coloring(tuple(arcs), tuple(regions))
