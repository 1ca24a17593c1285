"""Multiple group racks (MGRs) and their X-sets.

An MGR is a disjoint union of finite groups G_0, G_1, ... with a rack
operation.  Elements are flat global indices; component ``lam`` occupies
``offsets[lam] .. offsets[lam] + sizes[lam] - 1``.  The table ``mul[x, y]``
holds the product for ``x, y`` in one component and -1 otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .algebra import (
    AxiomError,
    FiniteRack,
    MalformedTableError,
    QSetAction,
    Report,
    OK,
    _as_table,
    _first,
    type_of,
)


def _find_identity(tab: np.ndarray) -> int | None:
    g = tab.shape[0]
    idx = np.arange(g)
    for e in range(g):
        if np.array_equal(tab[e], idx) and np.array_equal(tab[:, e], idx):
            return e
    return None


def check_group(tab: np.ndarray) -> Report:
    g = tab.shape[0]
    if tab.shape != (g, g) or g == 0:
        return Report(False, "group", None, "component table must be square and non-empty")
    if tab.min() < 0 or tab.max() >= g:
        return Report(False, "group", None, "entry out of range")
    left = tab[tab[:, :, None], np.arange(g)[None, None, :]]  # (xy)z
    right = tab[np.arange(g)[:, None, None], tab[None, :, :]]  # x(yz)
    bad = left != right
    if bad.any():
        return Report(False, "associativity", _first(bad))
    e = _find_identity(tab)
    if e is None:
        return Report(False, "identity", None, "no two-sided identity")
    for x in range(g):
        if not np.any((tab[x] == e) & (tab[:, x] == e)):
            return Report(False, "inverse", (x,))
    return OK


@dataclass(frozen=True, eq=False)
class FiniteMGR:
    """Finite MGR given by component multiplication tables and a global op table.

    Construction only checks shapes; ``verify_mgr`` checks the axioms.
    """

    components: tuple
    op: np.ndarray
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        comps = tuple(_as_table(c) for c in self.components)
        if not comps:
            raise MalformedTableError("an MGR needs at least one component")
        for c in comps:
            _as_table(c, rows=c.shape[0], cols=c.shape[0], values=c.shape[0])
        sizes = np.array([c.shape[0] for c in comps], dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)
        total = int(sizes.sum())
        op = _as_table(self.op, rows=total, cols=total, values=total)
        comp_of = np.repeat(np.arange(len(comps)), sizes)
        local = np.arange(total) - offsets[comp_of]
        mul = np.full((total, total), -1, dtype=np.int64)
        ident = np.full(len(comps), -1, dtype=np.int64)
        inv = np.full(total, -1, dtype=np.int64)
        for lam, (c, off) in enumerate(zip(comps, offsets)):
            g = c.shape[0]
            mul[off : off + g, off : off + g] = c + off
            e = _find_identity(c)
            if e is None:
                continue
            ident[lam] = e + off
            for x in range(g):
                hits = np.flatnonzero((c[x] == e) & (c[:, x] == e))
                if len(hits):
                    inv[off + x] = off + hits[0]
        for arr in (*comps, op, mul, ident, inv, comp_of, local, sizes, offsets):
            arr.setflags(write=False)
        set_ = object.__setattr__
        set_(self, "components", comps)
        set_(self, "op", op)
        set_(self, "mul", mul)
        set_(self, "identity", ident)
        set_(self, "inverse", inv)
        set_(self, "comp_of", comp_of)
        set_(self, "local", local)
        set_(self, "sizes", sizes)
        set_(self, "offsets", offsets)

    @property
    def size(self) -> int:
        return self.op.shape[0]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def same_component(self, x: int, y: int) -> bool:
        return self.comp_of[x] == self.comp_of[y]

    def component_members(self, lam: int) -> range:
        off = int(self.offsets[lam])
        return range(off, off + int(self.sizes[lam]))

    def same_component_pairs(self) -> np.ndarray:
        """All (x, y) in a common component, as a (P, 2) array."""
        blocks = []
        for off, g in zip(self.offsets, self.sizes):
            r = np.arange(off, off + g)
            blocks.append(np.stack(np.meshgrid(r, r, indexing="ij"), -1).reshape(-1, 2))
        return np.concatenate(blocks)

    def same_component_triples(self) -> np.ndarray:
        blocks = []
        for off, g in zip(self.offsets, self.sizes):
            r = np.arange(off, off + g)
            blocks.append(np.stack(np.meshgrid(r, r, r, indexing="ij"), -1).reshape(-1, 3))
        return np.concatenate(blocks)

    def __repr__(self) -> str:
        return f"FiniteMGR({self.name or 'mgr'}, N={self.size}, components={self.n_components})"


def verify_mgr(m: FiniteMGR) -> Report:
    for lam, c in enumerate(m.components):
        rep = check_group(c)
        if not rep:
            return Report(False, f"group[{lam}]:{rep.axiom}", rep.witness, rep.detail)
    N = m.size
    op = m.op
    # axiom (1): x*e = x and x*(y1 y2) = (x*y1)*y2
    for e in m.identity:
        bad = op[:, e] != np.arange(N)
        if bad.any():
            x = int(np.flatnonzero(bad)[0])
            return Report(False, "axiom1-identity", (x, int(e)), "x*e != x")
    pairs = m.same_component_pairs()
    y1, y2 = pairs[:, 0], pairs[:, 1]
    lhs = op[:, m.mul[y1, y2]]
    rhs = op[op[:, y1], y2[None, :]]
    bad = lhs != rhs
    if bad.any():
        x, p = _first(bad)
        return Report(False, "axiom1", (x, int(y1[p]), int(y2[p])), "x*(y1y2) != (x*y1)*y2")
    # axiom (2): (x*y)*z = (x*z)*(y*z)
    idx = np.arange(N)
    for x in range(N):
        lhs = op[op[x][:, None], idx[None, :]]
        rhs = op[op[x][None, :], op]
        bad = lhs != rhs
        if bad.any():
            y, z = _first(bad)
            return Report(False, "axiom2", (x, y, z), "(x*y)*z != (x*z)*(y*z)")
    # axiom (3): x1*y, x2*y share a component and (x1x2)*y = (x1*y)(x2*y)
    x1, x2 = pairs[:, 0], pairs[:, 1]
    a = op[x1]  # (P, N)
    b = op[x2]
    comp_bad = m.comp_of[a] != m.comp_of[b]
    if comp_bad.any():
        p, y = _first(comp_bad)
        return Report(False, "axiom3-component", (int(x1[p]), int(x2[p]), y), "x1*y and x2*y in different components")
    lhs = op[m.mul[x1, x2]]
    rhs = m.mul[a, b]
    bad = lhs != rhs
    if bad.any():
        p, y = _first(bad)
        return Report(False, "axiom3", (int(x1[p]), int(x2[p]), y), "(x1x2)*y != (x1*y)(x2*y)")
    return OK


def verify_xset(m: FiniteMGR, act) -> Report:
    arr = _as_table(act, cols=m.size)
    k = arr.shape[0]
    _as_table(arr, values=k)
    for e in m.identity:
        bad = arr[:, e] != np.arange(k)
        if bad.any():
            return Report(False, "xset-identity", (int(np.flatnonzero(bad)[0]), int(e)))
    pairs = m.same_component_pairs()
    x1, x2 = pairs[:, 0], pairs[:, 1]
    lhs = arr[:, m.mul[x1, x2]]
    rhs = arr[arr[:, x1], x2[None, :]]
    bad = lhs != rhs
    if bad.any():
        v, p = _first(bad)
        return Report(False, "xset-product", (v, int(x1[p]), int(x2[p])), "v★(x1x2) != (v★x1)★x2")
    N = m.size
    for v in range(k):
        lhs = arr[arr[v][:, None], np.arange(N)[None, :]]  # (v★x)★y
        rhs = arr[arr[v][None, :], m.op]  # (v★y)★(x*y)
        bad = lhs != rhs
        if bad.any():
            x, y = _first(bad)
            return Report(False, "xset-compatibility", (v, x, y), "(v★x)★y != (v★y)★(x*y)")
    return OK


@dataclass(frozen=True, eq=False)
class XSetAction:
    mgr: FiniteMGR
    act: np.ndarray
    name: str = ""

    def __post_init__(self):
        arr = _as_table(self.act, cols=self.mgr.size)
        _as_table(arr, values=arr.shape[0])
        arr.setflags(write=False)
        object.__setattr__(self, "act", arr)

    @property
    def size(self) -> int:
        return self.act.shape[0]


def trivial_xset(m: FiniteMGR) -> XSetAction:
    return XSetAction(m, np.zeros((1, m.size), dtype=np.int64), name="trivial")


def index_xset(m: FiniteMGR) -> XSetAction:
    """The component index set acting by lam ★ x = component of (any element of G_lam) * x."""
    act = np.empty((m.n_components, m.size), dtype=np.int64)
    for lam in range(m.n_components):
        rep = int(m.offsets[lam])
        act[lam] = m.comp_of[m.op[rep]]
    return XSetAction(m, act, name="components")


def cyclic_table(k: int) -> np.ndarray:
    i = np.arange(k)
    return (i[:, None] + i[None, :]) % k


def conjugation_mgr(group_table, name: str = "") -> FiniteMGR:
    """One-component MGR on a group with x * y = y^-1 x y."""
    tab = _as_table(group_table)
    rep = check_group(tab)
    if not rep:
        raise AxiomError(str(rep))
    g = tab.shape[0]
    e = _find_identity(tab)
    inv = np.array([int(np.flatnonzero(tab[x] == e)[0]) for x in range(g)])
    x = np.arange(g)
    op = tab[tab[inv[None, :], x[:, None]], x[None, :]]
    return FiniteMGR((tab,), op, name=name or "conj")


@dataclass(frozen=True, eq=False, repr=False)
class AssociatedMGR(FiniteMGR):
    """Q x Z_kappa with (a,g)*(b,h) = (a *^h b, g) and (a,g)(a,h) = (a, g+h).

    Element (a, i) has global index a*kappa + i.
    """

    rack: FiniteRack | None = None
    kappa: int = 1

    def pair(self, x: int) -> tuple[int, int]:
        return divmod(int(x), self.kappa)

    def index(self, a: int, i: int) -> int:
        return int(a) * self.kappa + int(i) % self.kappa


def associated_mgr(rack: FiniteRack, k: int = 1, qset: QSetAction | None = None) -> tuple[AssociatedMGR, XSetAction]:
    """The associated MGR of a rack with group Z_kappa, kappa = k * type.

    The type is taken together with the Q-set when one is supplied, which makes
    the Q-set an X-set via v ★ (a, i) = v ★^i a.  Without a Q-set the trivial
    X-set is returned.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    kappa = k * type_of(rack, qset)
    q = rack.size
    powers = [rack.power_table(h) for h in range(kappa)]
    N = q * kappa
    op = np.empty((N, N), dtype=np.int64)
    g = np.arange(kappa)
    for h in range(kappa):
        # column (b, h): row (a, g) -> (a *^h b, g)
        cols = np.arange(q) * kappa + h
        op[:, cols] = (powers[h][:, None, :] * kappa + g[None, :, None]).reshape(N, q)
    comp = cyclic_table(kappa)
    meta = {"k": k, "kappa": kappa, "rack": rack.name}
    m = AssociatedMGR((comp,) * q, op, name=f"{rack.name}xZ{kappa}", meta=meta, rack=rack, kappa=kappa)
    if qset is None:
        return m, trivial_xset(m)
    act = np.empty((qset.size, N), dtype=np.int64)
    v = np.arange(qset.size)
    for a in range(q):
        cur = v.copy()
        for i in range(kappa):
            act[:, a * kappa + i] = cur
            cur = qset.act[cur, a]
    return m, XSetAction(m, act, name=qset.name)


def extend_mgr_by_cocycle(m: FiniteMGR, d: int, theta) -> FiniteMGR:
    """The MGR on X x Z_d twisted by an MGR 2-cochain with trivial X-set.

    (x,s)*(y,t) = (x*y, s + theta<x><y>) and (x1,s)(x2,t) = (x1x2, s+t+theta<x1,x2>).
    Element (x, s) has global index x*d + s; component order follows X.
    """
    pair = np.asarray(theta.pair_values)
    block = np.asarray(theta.block_values)
    if pair.shape[0] != 1:
        raise ValueError("extension needs a cochain over the trivial X-set")
    pair, block = pair[0], block[0]
    s = np.arange(d)
    N = m.size
    op = np.empty((N * d, N * d), dtype=np.int64)
    for x in range(N):
        for y in range(N):
            op[x * d : x * d + d, y * d : y * d + d] = (m.op[x, y] * d + (s[:, None] + pair[x, y]) % d) * np.ones((1, d), dtype=np.int64)
    comps = []
    for lam in range(m.n_components):
        off, g = int(m.offsets[lam]), int(m.sizes[lam])
        tab = np.empty((g * d, g * d), dtype=np.int64)
        for i in range(g):
            for j in range(g):
                x1, x2 = off + i, off + j
                prod = int(m.mul[x1, x2]) - off
                tab[i * d : i * d + d, j * d : j * d + d] = prod * d + (s[:, None] + s[None, :] + block[x1, x2]) % d
        comps.append(tab)
    return FiniteMGR(tuple(comps), op, name=f"{m.name}x~Z{d}", meta={"extension": d})


def mgr_to_json(m: FiniteMGR) -> dict[str, Any]:
    return {
        "kind": "mgr",
        "components": [{"size": int(c.shape[0]), "mul": c.tolist()} for c in m.components],
        "op": m.op.tolist(),
        "meta": {"name": m.name},
    }


def mgr_from_json(data: dict) -> FiniteMGR:
    if data.get("kind") != "mgr":
        raise MalformedTableError("not an mgr document")
    comps = []
    for c in data["components"]:
        tab = _as_table(c["mul"])
        if tab.shape[0] != c.get("size", tab.shape[0]):
            raise MalformedTableError("component size does not match table")
        comps.append(tab)
    return FiniteMGR(tuple(comps), _as_table(data["op"]), name=data.get("meta", {}).get("name", ""))


@dataclass(frozen=True)
class GFamily:
    """The Z_kappa-family a *^g b of a rack, realised by iterated powers."""

    rack: FiniteRack
    kappa: int

    def __post_init__(self):
        if self.kappa % type_of(self.rack):
            raise ValueError("kappa must be a multiple of the rack type")

    def op(self, a: int, g: int, b: int) -> int:
        return self.rack.star(a, b, g % self.kappa)

    def check(self) -> Report:
        r = self.rack
        for g in range(self.kappa):
            pg = r.power_table(g)
            for h in range(self.kappa):
                ph = r.power_table(h)
                pgh = r.power_table((g + h) % self.kappa)
                # a *^{g+h} b == (a *^g b) *^h b
                cols = np.arange(r.size)[None, :]
                bad = pgh != ph[pg, cols]
                if bad.any():
                    return Report(False, "family-sum", (g, h) + _first(bad))
                # (a *^g b) *^h c == (a *^h c) *^g (b *^h c)
                lhs = ph[pg[:, :, None], np.arange(r.size)[None, None, :]]
                rhs = pg[ph[:, None, :], ph[None, :, :]]
                bad = lhs != rhs
                if bad.any():
                    return Report(False, "family-distributivity", (g, h) + _first(bad))
        return OK


def describe_element(m: FiniteMGR, x: int) -> str:
    if isinstance(m, AssociatedMGR):
        a, i = m.pair(x)
        return f"({a},{i})"
    return f"{int(m.comp_of[x])}:{int(m.local[x])}"


def products(m: FiniteMGR, xs: Sequence[int]) -> int:
    acc = int(xs[0])
    for x in xs[1:]:
        nxt = int(m.mul[acc, x])
        if nxt < 0:
            raise ValueError("elements from different components")
        acc = nxt
    return acc


def xset_to_json(xset: XSetAction) -> dict[str, Any]:
    return {
        "kind": "xset",
        "size": xset.size,
        "table": xset.act.tolist(),
        "meta": {"name": xset.name, "mgr": mgr_to_json(xset.mgr)},
    }


def xset_from_json(data: dict, m: FiniteMGR | None = None) -> XSetAction:
    if data.get("kind") != "xset":
        raise MalformedTableError("not an xset document")
    meta = data.get("meta", {})
    if m is None:
        m = mgr_from_json(meta["mgr"])
    return XSetAction(m, _as_table(data["table"]), name=meta.get("name", ""))
