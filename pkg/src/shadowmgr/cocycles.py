"""Shadow 2-cochains, their cocycle conditions, and cocycle constructions.

A rack-flavoured cochain stores ``pair_values[v, a, b] = theta(<v><a><b>)``.
An MGR-flavoured cochain additionally stores ``block_values[v, x1, x2] =
theta(<v><x1,x2>)`` (zero outside same-component pairs).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .algebra import FiniteRack, QSetAction, Report, OK, dihedral_quandle, product_rack, regular_qset, ts_rack
from .mgr import AssociatedMGR, FiniteMGR, XSetAction, associated_mgr


@dataclass(frozen=True, eq=False)
class Cochain2:
    flavor: str  # "rack" or "mgr"
    modulus: int
    pair_values: np.ndarray
    block_values: np.ndarray | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.flavor not in ("rack", "mgr"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.modulus < 1 or self.modulus > 2**31:
            raise ValueError("modulus out of range")
        pair = np.asarray(self.pair_values, dtype=np.int64) % self.modulus
        if pair.ndim != 3 or pair.shape[1] != pair.shape[2]:
            raise ValueError("pair table must have shape (|Y|, N, N)")
        pair.setflags(write=False)
        object.__setattr__(self, "pair_values", pair)
        if self.flavor == "mgr":
            block = np.zeros_like(pair) if self.block_values is None else np.asarray(self.block_values, dtype=np.int64) % self.modulus
            if block.shape != pair.shape:
                raise ValueError("block table must match the pair table")
            block.setflags(write=False)
            object.__setattr__(self, "block_values", block)
        elif self.block_values is not None:
            raise ValueError("rack cochains have no block values")

    @property
    def y_size(self) -> int:
        return self.pair_values.shape[0]

    @property
    def x_size(self) -> int:
        return self.pair_values.shape[1]

    def value(self, g) -> int:
        v, blocks = g
        if len(blocks) == 2 and len(blocks[0]) == 1 and len(blocks[1]) == 1:
            return int(self.pair_values[v, blocks[0][0], blocks[1][0]])
        if len(blocks) == 1 and len(blocks[0]) == 2 and self.flavor == "mgr":
            return int(self.block_values[v, blocks[0][0], blocks[0][1]])
        raise ValueError(f"{self.flavor} 2-cochain is not defined on {g}")

    def __call__(self, g) -> int:
        return self.value(g)

    def with_entry(self, key: tuple, delta: int = 1, table: str = "pair") -> "Cochain2":
        """Copy with one entry shifted by ``delta``; used to build mutants."""
        pair = self.pair_values.copy()
        block = None if self.block_values is None else self.block_values.copy()
        target = pair if table == "pair" else block
        target[key] = (target[key] + delta) % self.modulus
        prov = dict(self.provenance, mutated={"table": table, "entry": list(map(int, key)), "delta": delta})
        return Cochain2(self.flavor, self.modulus, pair, block, prov)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        if self.flavor != other.flavor or self.modulus != other.modulus:
            raise ValueError("incompatible cochains")
        block = None if self.block_values is None else self.block_values + other.block_values
        return Cochain2(self.flavor, self.modulus, self.pair_values + other.pair_values, block, {"sum": True})


def zero_cochain(flavor: str, modulus: int, y_size: int, x_size: int) -> Cochain2:
    z = np.zeros((y_size, x_size, x_size), dtype=np.int64)
    return Cochain2(flavor, modulus, z, z.copy() if flavor == "mgr" else None, {"zero": True})


def _rack_condition_terms(t: np.ndarray, op: np.ndarray, act: np.ndarray, vs: np.ndarray):
    """Both sides of the rack 2-cocycle condition on (v, a, b, c) for v in vs."""
    n = op.shape[0]
    a = np.arange(n)[None, :, None, None]
    b = np.arange(n)[None, None, :, None]
    c = np.arange(n)[None, None, None, :]
    v = vs[:, None, None, None]
    lhs = t[act[v, a], b, c] + t[v, a, c] + t[act[v, c], op[a, c], op[b, c]]
    rhs = t[v, b, c] + t[act[v, b], op[a, b], c] + t[v, a, b]
    return lhs, rhs


def check_rack_2cocycle(theta: Cochain2, rack: FiniteRack, qset: QSetAction) -> Report:
    if theta.flavor != "rack":
        raise ValueError("expected a rack-flavoured cochain")
    if theta.pair_values.shape != (qset.size, rack.size, rack.size):
        raise ValueError("cochain shape does not match the rack and Q-set")
    d = theta.modulus
    for v0 in range(qset.size):
        lhs, rhs = _rack_condition_terms(theta.pair_values, rack.op, qset.act, np.array([v0]))
        bad = (lhs - rhs) % d != 0
        if bad.any():
            _, a, b, c = (int(i) for i in np.argwhere(bad)[0])
            return Report(False, "rack-2-cocycle", (v0, a, b, c))
    return OK


def check_mgr_2cocycle(theta: Cochain2, m: FiniteMGR, xset: XSetAction, chunk: int = 24) -> Report:
    """Check the four shadow MGR 2-cocycle conditions exhaustively."""
    if theta.flavor != "mgr":
        raise ValueError("expected an MGR-flavoured cochain")
    N, K = m.size, xset.size
    if theta.pair_values.shape != (K, N, N):
        raise ValueError("cochain shape does not match the MGR and X-set")
    d = theta.modulus
    t, blk = theta.pair_values, theta.block_values
    op, act, mul = m.op, xset.act, m.mul
    # (1) over Y x X^3, chunked along x
    y = np.arange(N)[None, :, None]
    z = np.arange(N)[None, None, :]
    for v in range(K):
        for start in range(0, N, chunk):
            x = np.arange(start, min(N, start + chunk))[:, None, None]
            lhs = t[act[v, x], y, z] + t[v, x, z] + t[act[v, z], op[x, z], op[y, z]]
            rhs = t[v, y, z] + t[act[v, y], op[x, y], z] + t[v, x, y]
            bad = (lhs - rhs) % d != 0
            if bad.any():
                i, j, k = (int(u) for u in np.argwhere(bad)[0])
                return Report(False, "mgr-condition-1", (v, start + i, j, k))
    pairs = m.same_component_pairs()
    p1, p2 = pairs[:, 0], pairs[:, 1]
    prod = mul[p1, p2]
    vs = np.arange(K)[:, None, None]
    xs = np.arange(N)[None, :, None]
    # (2) <v><x><y1,y2>
    Y1, Y2, Y12 = p1[None, None, :], p2[None, None, :], prod[None, None, :]
    lhs = blk[act[vs, xs], Y1, Y2] + t[vs, xs, Y12]
    rhs = blk[vs, Y1, Y2] + t[act[vs, Y1], op[xs, Y1], Y2] + t[vs, xs, Y1]
    bad = (lhs - rhs) % d != 0
    if bad.any():
        v, x, p = (int(u) for u in np.argwhere(bad)[0])
        return Report(False, "mgr-condition-2", (v, x, int(p1[p]), int(p2[p])))
    # (3) <v><x1,x2><y>
    X1, X2, X12 = p1[None, :, None], p2[None, :, None], prod[None, :, None]
    ys = np.arange(N)[None, None, :]
    lhs = t[act[vs, X1], X2, ys] + t[vs, X1, ys] + blk[act[vs, ys], op[X1, ys], op[X2, ys]]
    rhs = t[vs, X12, ys] + blk[vs, X1, X2]
    bad = (lhs - rhs) % d != 0
    if bad.any():
        v, p, yy = (int(u) for u in np.argwhere(bad)[0])
        return Report(False, "mgr-condition-3", (v, int(p1[p]), int(p2[p]), yy))
    # (4) <v><x1,x2,x3>
    tri = m.same_component_triples()
    a1, a2, a3 = (tri[:, i][None, :] for i in range(3))
    vv = np.arange(K)[:, None]
    lhs = blk[act[vv, a1], a2, a3] + blk[vv, a1, mul[a2, a3]]
    rhs = blk[vv, mul[a1, a2], a3] + blk[vv, a1, a2]
    bad = (lhs - rhs) % d != 0
    if bad.any():
        v, p = (int(u) for u in np.argwhere(bad)[0])
        return Report(False, "mgr-condition-4", (v,) + tuple(int(u) for u in tri[p]))
    return OK


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def mochizuki_value(p: int, i: int, j: int, k: int) -> int:
    inner = j**p + (2 * k - j) ** p - 2 * k**p
    if inner % p:
        raise ArithmeticError(f"{inner} is not divisible by {p}")
    return ((i - j) * (inner // p)) % p


def mochizuki(p: int) -> Cochain2:
    """Mochizuki's cocycle on the dihedral quandle R_p acting on itself, values in Z_p."""
    if p == 2 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    vals = np.empty((p, p, p), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            for k in range(p):
                # python ints keep j**p exact for any p
                vals[i, j, k] = mochizuki_value(p, i, j, k)
    return Cochain2("rack", p, vals, provenance={"construction": "mochizuki", "p": p})


def mochizuki_data(p: int) -> tuple[FiniteRack, QSetAction, Cochain2]:
    r = dihedral_quandle(p)
    return r, regular_qset(r), mochizuki(p)


def ts_relations(n: int, t: int, s: int, f: int, g: int, h: int) -> dict[str, int]:
    return {
        "s(t+s-1)": s * (t + s - 1) % n,
        "f(1-t)": f * (1 - t) % n,
        "fs": f * s % n,
        "h(1-t)+(f+g)s": (h * (1 - t) + (f + g) * s) % n,
        "(f+g+h)s": (f + g + h) * s % n,
    }


def ts_cocycle(n: int, t: int, s: int, f: int, g: int, h: int) -> tuple[FiniteRack, QSetAction, Cochain2]:
    """theta(<x><y><z>) = f x + g y + h z on the (t,s)-rack Z_n acting on itself."""
    bad = {k: v for k, v in ts_relations(n, t, s, f, g, h).items() if v}
    if bad:
        raise ValueError(f"relations violated: {bad}")
    r = ts_rack(n, t, s)
    x = np.arange(n)
    vals = (f * x[:, None, None] + g * x[None, :, None] + h * x[None, None, :]) % n
    prov = {"construction": "ts", "n": n, "t": t, "s": s, "f": f, "g": g, "h": h}
    return r, regular_qset(r), Cochain2("rack", n, vals, provenance=prov)


def lift_parallel(
    theta: Cochain2,
    rack: FiniteRack,
    qset: QSetAction,
    n: int,
    signs: Sequence[int],
    indices: Sequence[int],
) -> tuple[FiniteRack, QSetAction, Cochain2]:
    """Lift a rack cocycle to the product rack Q^n built from (signs, indices)."""
    if theta.flavor != "rack" or theta.pair_values.shape != (qset.size, rack.size, rack.size):
        raise ValueError("cochain does not match the rack and Q-set")
    prod, lifted = product_rack(rack, n, signs, indices, qset)
    q, size, K = rack.size, prod.size, qset.size
    from .algebra import decode_index

    coords = np.array([decode_index(k, q, n) for k in range(size)], dtype=np.int64).reshape(size, n)
    m = len(signs)
    t = theta.pair_values
    A = np.arange(size)[:, None]  # a index
    B = np.arange(size)[None, :]  # b index
    total = np.zeros((K, size, size), dtype=np.int64)
    for v in range(K):
        for p in range(m):
            # v acted on by the a-word up to p-1, then a_{i_p}^{-delta(e_p,-1)}
            va = np.full(size, v, dtype=np.int64)
            for r in range(p):
                va = (qset.act if signs[r] == 1 else qset.inv)[va, coords[:, indices[r] - 1]]
            if signs[p] == -1:
                va = qset.inv[va, coords[:, indices[p] - 1]]
            vpq = np.broadcast_to(va[:, None], (size, size)).copy()
            apq = np.broadcast_to(coords[:, indices[p] - 1][:, None], (size, size)).copy()
            for qq in range(m):
                bq = np.broadcast_to(coords[:, indices[qq] - 1][None, :], (size, size))
                if signs[qq] == -1:
                    v_use = qset.inv[vpq, bq]
                    a_use = rack.inv[apq, bq]
                else:
                    v_use, a_use = vpq, apq
                total[v] += signs[p] * signs[qq] * t[v_use, a_use, bq]
                # advance the b-word by one letter
                tab_v = qset.act if signs[qq] == 1 else qset.inv
                tab_a = rack.op if signs[qq] == 1 else rack.inv
                vpq = tab_v[vpq, bq]
                apq = tab_a[apq, bq]
    prov = {
        "construction": "lift-parallel",
        "base": theta.provenance,
        "n": n,
        "signs": list(signs),
        "indices": list(indices),
    }
    return prod, lifted, Cochain2("rack", theta.modulus, total, provenance=prov)


def _kernel_table(theta: Cochain2, rack: FiniteRack, qset: QSetAction, kappa: int) -> np.ndarray:
    """K[v, a, b, i, j] = sum_{p<i} sum_{q<j} theta(<v ★^p a ★^q b><a *^q b><b>) for 0 <= i, j <= kappa."""
    q, K = rack.size, qset.size
    t = theta.pair_values
    d = theta.modulus
    ker = np.zeros((K, q, q, kappa + 1, kappa + 1), dtype=np.int64)
    v = np.arange(K)[:, None, None]
    a = np.arange(q)[None, :, None]
    b = np.arange(q)[None, None, :]
    # va[p] = v ★^p a, shape (K, q, 1)
    va = np.broadcast_to(v, (K, q, 1)).copy()
    terms = np.zeros((K, q, q, kappa, kappa), dtype=np.int64)
    for p in range(kappa):
        vab = np.broadcast_to(va, (K, q, q)).copy()
        aqb = np.broadcast_to(a, (K, q, q)).copy()
        bb = np.broadcast_to(b, (K, q, q))
        for qq in range(kappa):
            terms[..., p, qq] = t[vab, aqb, bb]
            vab = qset.act[vab, bb]
            aqb = rack.op[aqb, bb]
        va = qset.act[va, np.broadcast_to(a, (K, q, 1))]
    ker[..., 1:, 1:] = terms.cumsum(axis=3).cumsum(axis=4) % d
    return ker


def mgr_lift_license(theta: Cochain2, rack: FiniteRack, qset: QSetAction, kappa: int, k: int) -> list[str]:
    """Hypotheses under which the lift is a cocycle.

    'sums-vanish': both kappa-fold sums of theta vanish for every (v, a, b).
    'k-annihilates': k alpha = 0 for every alpha in Z_d.
    An empty list means the lift is not licensed.
    """
    ker = _kernel_table(theta, rack, qset, kappa)
    d = theta.modulus
    first = ker[..., kappa, 1] % d  # sum over p of theta(<v★^{p-1}a><a><b>)
    second = ker[..., 1, kappa] % d  # sum over q of theta(<v★^{q-1}b><a*^{q-1}b><b>)
    found = []
    if not first.any() and not second.any():
        found.append("sums-vanish")
    if k % d == 0:
        found.append("k-annihilates")
    return found


def lift_mgr(
    theta: Cochain2, rack: FiniteRack, qset: QSetAction, k: int
) -> tuple[AssociatedMGR, XSetAction, Cochain2]:
    """Lift a shadow rack cocycle to the associated MGR Q x Z_kappa, kappa = k type(Q, Y).

    Z_kappa colour 0 is read as kappa before summing, so indices run over 1..kappa.
    """
    if theta.flavor != "rack":
        raise ValueError("expected a rack-flavoured cochain")
    m, xset = associated_mgr(rack, k, qset)
    kappa = m.kappa
    license_ = mgr_lift_license(theta, rack, qset, kappa, k)
    if not license_:
        raise ValueError("neither the vanishing-sum condition nor k*A = 0 holds; lift refused")
    ker = _kernel_table(theta, rack, qset, kappa)
    q, K = rack.size, qset.size
    idx = np.arange(kappa)
    rep = np.where(idx == 0, kappa, idx)  # 0 -> kappa
    # pair[v, (a,i), (b,j)] = ker[v, a, b, rep(i), rep(j)]
    pair = ker[:, :, :, rep][:, :, :, :, rep]  # (K, q, q, kappa, kappa)
    pair = pair.transpose(0, 1, 3, 2, 4).reshape(K, q * kappa, q * kappa)
    block = np.zeros_like(pair)
    prov = {"construction": "lift-mgr", "base": theta.provenance, "k": k, "kappa": kappa, "license": license_}
    return m, xset, Cochain2("mgr", theta.modulus, pair, block, prov)


def theta_infinite(theta: Cochain2, rack: FiniteRack, qset: QSetAction, v: int, a: int, i: int, b: int, j: int) -> int:
    """The lift over Q x Z evaluated at <v><(a,i)><(b,j)>, including negative exponents."""

    def kernel(v0, a0, ii, b0, jj):
        total = 0
        for p in range(ii):
            for q in range(jj):
                w = qset.star(qset.star(v0, a0, p), b0, q)
                total += theta.value((w, ((rack.star(a0, b0, q),), (b0,))))
        return total

    d = theta.modulus
    if i > 0 and j > 0:
        val = kernel(v, a, i, b, j)
    elif i > 0 and j < 0:
        val = -kernel(qset.star(v, b, j), rack.star(a, b, j), i, b, -j)
    elif i < 0 and j > 0:
        val = -kernel(qset.star(v, a, i), a, -i, b, j)
    elif i < 0 and j < 0:
        val = kernel(qset.star(qset.star(v, a, i), b, j), rack.star(a, b, j), -i, b, -j)
    else:
        val = 0
    return val % d


def cochain_to_json(theta: Cochain2) -> dict[str, Any]:
    values: dict[str, Any] = {"pair": theta.pair_values.tolist()}
    if theta.flavor == "mgr":
        values["block"] = theta.block_values.tolist()
    return {
        "kind": "cochain2",
        "flavor": theta.flavor,
        "modulus": theta.modulus,
        "values": values,
        "provenance": theta.provenance,
    }


def cochain_from_json(data: dict) -> Cochain2:
    if data.get("kind") != "cochain2":
        raise ValueError("not a cochain2 document")
    vals = data["values"]
    return Cochain2(
        data["flavor"],
        int(data["modulus"]),
        np.asarray(vals["pair"], dtype=np.int64),
        None if "block" not in vals else np.asarray(vals["block"], dtype=np.int64),
        data.get("provenance", {}),
    )


def coboundary_of_1cochain(h: np.ndarray, modulus: int, m: FiniteMGR, xset: XSetAction) -> Cochain2:
    """h o d_2 for a 1-cochain h[v, x]; adding it to a cocycle leaves cycle evaluations unchanged."""
    act, op, mul = xset.act, m.op, m.mul
    K, N = xset.size, m.size
    v = np.arange(K)[:, None, None]
    x = np.arange(N)[None, :, None]
    y = np.arange(N)[None, None, :]
    pair = h[act[v, x], y] + h[v, x] - h[v, y] - h[act[v, y], op[x, y]]
    same = mul >= 0
    prod = np.where(same, mul, 0)
    blk = h[act[v, x], y] + h[v, x] - h[v, prod[None]]
    block = np.where(same[None], blk, 0)
    return Cochain2("mgr", modulus, pair, block, {"coboundary": True})
