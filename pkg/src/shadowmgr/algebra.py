"""Finite racks, quandles and Q-sets stored as dense operation tables.

Elements are 0-based integers.  ``rack.op[a, b]`` is ``a * b`` and
``qset.act[v, a]`` is ``v ★ a``.  Inverse tables are computed once at
construction so negative powers cost a single lookup.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Sequence

import numpy as np


class MalformedTableError(ValueError):
    pass


class AxiomError(ValueError):
    """Raised when a constructor is handed a table that breaks an axiom."""


@dataclass(frozen=True)
class Report:
    """Outcome of an exhaustive axiom check.

    ``axiom`` names the first failing law and ``witness`` holds the offending
    tuple of element indices.
    """

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"violated {self.axiom} at {self.witness}" + (f": {self.detail}" if self.detail else "")


OK = Report(True)


def _as_table(table, rows: int | None = None, cols: int | None = None, values: int | None = None) -> np.ndarray:
    try:
        arr = np.asarray(table)
    except Exception as exc:  # ragged nested lists
        raise MalformedTableError(f"cannot read table: {exc}") from exc
    if arr.dtype == object or arr.ndim != 2:
        raise MalformedTableError("table must be a rectangular 2-d array")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise MalformedTableError("table entries must be integers")
    arr = arr.astype(np.int64)
    if rows is not None and arr.shape[0] != rows:
        raise MalformedTableError(f"expected {rows} rows, got {arr.shape[0]}")
    if cols is not None and arr.shape[1] != cols:
        raise MalformedTableError(f"expected {cols} columns, got {arr.shape[1]}")
    if values is not None and arr.size and (arr.min() < 0 or arr.max() >= values):
        raise MalformedTableError(f"entry out of range 0..{values - 1}")
    return arr


def _first(mask: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.argwhere(mask)[0])


def _column_bijectivity(arr: np.ndarray, size: int) -> tuple[bool, int]:
    # arr[:, b] must be a permutation of range(size) for each b
    for b in range(arr.shape[1]):
        if len(np.unique(arr[:, b])) != size:
            return False, b
    return True, -1


def _invert_columns(arr: np.ndarray) -> np.ndarray:
    inv = np.empty_like(arr)
    cols = np.arange(arr.shape[1])
    inv[arr, cols[None, :]] = np.arange(arr.shape[0])[:, None]
    return inv


def verify_rack(table) -> Report:
    arr = _as_table(table)
    n = arr.shape[0]
    if arr.shape != (n, n) or n == 0:
        raise MalformedTableError("rack table must be square and non-empty")
    _as_table(arr, values=n)
    ok, b = _column_bijectivity(arr, n)
    if not ok:
        col = arr[:, b]
        vals, counts = np.unique(col, return_counts=True)
        dup = int(vals[counts > 1][0])
        a1, a2 = (int(i) for i in np.flatnonzero(col == dup)[:2])
        return Report(False, "bijectivity", (a1, a2, b), f"{a1}*{b} = {a2}*{b} = {dup}")
    # (a*b)*c == (a*c)*(b*c), vectorized over all (a, b, c)
    lhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
    ac = arr[:, None, :]
    bc = arr[None, :, :]
    rhs = arr[np.broadcast_to(ac, (n, n, n)), np.broadcast_to(bc, (n, n, n))]
    bad = lhs != rhs
    if bad.any():
        a, b, c = _first(bad)
        return Report(False, "self-distributivity", (a, b, c), "(a*b)*c != (a*c)*(b*c)")
    return OK


@dataclass(frozen=True, eq=False)
class FiniteRack:
    op: np.ndarray
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        arr = _as_table(self.op)
        report = verify_rack(arr)
        if not report:
            raise AxiomError(str(report))
        arr.setflags(write=False)
        inv = _invert_columns(arr)
        inv.setflags(write=False)
        object.__setattr__(self, "op", arr)
        object.__setattr__(self, "inv", inv)

    @property
    def size(self) -> int:
        return self.op.shape[0]

    @property
    def is_quandle(self) -> bool:
        idx = np.arange(self.size)
        return bool(np.all(self.op[idx, idx] == idx))

    def star(self, a: int, b: int, power: int = 1) -> int:
        """Return a *^power b (power may be negative)."""
        table = self.op if power >= 0 else self.inv
        for _ in range(abs(power)):
            a = int(table[a, b])
        return a

    def power_table(self, power: int) -> np.ndarray:
        """Table of a *^power b for all a, b."""
        table = self.op if power >= 0 else self.inv
        out = np.broadcast_to(np.arange(self.size)[:, None], (self.size, self.size)).copy()
        cols = np.arange(self.size)[None, :]
        for _ in range(abs(power)):
            out = table[out, cols]
        return out

    def __repr__(self) -> str:
        label = self.name or "rack"
        return f"FiniteRack({label}, size={self.size})"


def verify_qset(rack: FiniteRack, act) -> Report:
    arr = _as_table(act, cols=rack.size)
    m = arr.shape[0]
    if m == 0:
        raise MalformedTableError("Q-set must be non-empty")
    _as_table(arr, values=m)
    ok, a = _column_bijectivity(arr, m)
    if not ok:
        return Report(False, "bijectivity", (a,), f"v -> v★{a} is not a permutation")
    n = rack.size
    # (v★a)★b == (v★b)★(a*b)
    lhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
    vb = np.broadcast_to(arr[:, None, :], (m, n, n))
    ab = np.broadcast_to(rack.op[None, :, :], (m, n, n))
    rhs = arr[vb, ab]
    bad = lhs != rhs
    if bad.any():
        v, a, b = _first(bad)
        return Report(False, "compatibility", (v, a, b), "(v★a)★b != (v★b)★(a*b)")
    return OK


@dataclass(frozen=True, eq=False)
class QSetAction:
    rack: FiniteRack
    act: np.ndarray
    name: str = ""

    def __post_init__(self):
        arr = _as_table(self.act, cols=self.rack.size)
        report = verify_qset(self.rack, arr)
        if not report:
            raise AxiomError(str(report))
        arr.setflags(write=False)
        inv = _invert_columns(arr)
        inv.setflags(write=False)
        object.__setattr__(self, "act", arr)
        object.__setattr__(self, "inv", inv)

    @property
    def size(self) -> int:
        return self.act.shape[0]

    def star(self, v: int, a: int, power: int = 1) -> int:
        table = self.act if power >= 0 else self.inv
        for _ in range(abs(power)):
            v = int(table[v, a])
        return v


def trivial_qset(rack: FiniteRack) -> QSetAction:
    return QSetAction(rack, np.zeros((1, rack.size), dtype=np.int64), name="trivial")


def regular_qset(rack: FiniteRack) -> QSetAction:
    """The rack acting on itself by its own operation."""
    return QSetAction(rack, rack.op.copy(), name=rack.name)


def dihedral_quandle(n: int) -> FiniteRack:
    if n < 1:
        raise ValueError("dihedral quandle needs n >= 1")
    i = np.arange(n)
    return FiniteRack((2 * i[None, :] - i[:, None]) % n, name=f"R{n}", meta={"family": "dihedral", "n": n})


def ts_rack(n: int, t: int, s: int) -> FiniteRack:
    """The rack Z_n with x * y = t x + s y."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(t % n, n) != 1:
        raise ValueError(f"t={t} is not invertible mod {n}")
    if (s * (t + s - 1)) % n:
        raise ValueError(f"s(t+s-1) = {s * (t + s - 1)} is not 0 mod {n}")
    x = np.arange(n)
    table = (t * x[:, None] + s * x[None, :]) % n
    return FiniteRack(table, name=f"TS({n},{t},{s})", meta={"family": "ts", "n": n, "t": t, "s": s})


def encode_tuple(coords: Sequence[int], base: int) -> int:
    """Lexicographic index of a tuple; the first coordinate is most significant."""
    idx = 0
    for c in coords:
        idx = idx * base + int(c)
    return idx


def decode_index(index: int, base: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        index, r = divmod(index, base)
        out.append(r)
    return tuple(reversed(out))


def _word_permutation(table, inv, letters, width):
    """Permutation x -> x *^{e_1} b_1 ... *^{e_m} b_m as an array, given letters (e, b)."""
    x = np.arange(width)
    for e, b in letters:
        x = (table if e == 1 else inv)[x, b]
    return x


def product_rack(
    rack: FiniteRack,
    n: int,
    signs: Sequence[int],
    indices: Sequence[int],
    qset: QSetAction | None = None,
) -> tuple[FiniteRack, QSetAction | None]:
    """The rack Q^n where every coordinate of a is acted on by the word
    b_{i_1}^{e_1} ... b_{i_m}^{e_m}.  Indices are 1-based to match the usual
    notation.  If a Q-set is given it is re-equipped with the same word."""
    if n < 1:
        raise ValueError("n must be positive")
    if len(signs) != len(indices) or not signs:
        raise ValueError("signs and indices must be non-empty and of equal length")
    for e, i in zip(signs, indices):
        if e not in (1, -1):
            raise ValueError(f"sign {e} is not +-1")
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
    q = rack.size
    size = q**n
    coords = np.array([decode_index(k, q, n) for k in range(size)], dtype=np.int64).reshape(size, n)
    strides = q ** np.arange(n - 1, -1, -1)
    table = np.empty((size, size), dtype=np.int64)
    for b in range(size):
        letters = [(e, int(coords[b, i - 1])) for e, i in zip(signs, indices)]
        perm = _word_permutation(rack.op, rack.inv, letters, q)
        table[:, b] = perm[coords] @ strides
    meta = {"family": "product", "base": rack.name, "n": n, "signs": list(signs), "indices": list(indices)}
    prod = FiniteRack(table, name=f"{rack.name}^{n}", meta=meta)
    lifted = None
    if qset is not None:
        act = np.empty((qset.size, size), dtype=np.int64)
        for b in range(size):
            letters = [(e, int(coords[b, i - 1])) for e, i in zip(signs, indices)]
            act[:, b] = _word_permutation(qset.act, qset.inv, letters, qset.size)
        lifted = QSetAction(prod, act, name=qset.name)
    return prod, lifted


def _perm_order(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = math.lcm(order, length)
    return order


def type_of(rack: FiniteRack, qset: QSetAction | None = None) -> int:
    """Least n > 0 with a *^n b = a for all a, b (and v ★^n b = v if a Q-set is given).

    This is the lcm of the orders of the column permutations, hence always finite here.
    """
    orders = [_perm_order(rack.op[:, b]) for b in range(rack.size)]
    if qset is not None:
        orders += [_perm_order(qset.act[:, b]) for b in range(rack.size)]
    return reduce(math.lcm, orders, 1)


def type_of_element(rack: FiniteRack, q: int) -> int:
    """Least n > 0 with q *^n q = q."""
    x, n = rack.star(q, q), 1
    while x != q:
        x, n = rack.star(x, q), n + 1
    return n


def rack_to_json(rack: FiniteRack) -> dict[str, Any]:
    return {"kind": "rack", "size": rack.size, "table": rack.op.tolist(), "meta": dict(rack.meta, name=rack.name)}


def qset_to_json(qset: QSetAction) -> dict[str, Any]:
    return {
        "kind": "qset",
        "size": qset.size,
        "table": qset.act.tolist(),
        "meta": {"name": qset.name, "rack": rack_to_json(qset.rack)},
    }


def rack_from_json(data: dict) -> FiniteRack:
    if data.get("kind") != "rack":
        raise MalformedTableError("not a rack document")
    table = _as_table(data["table"])
    if table.shape[0] != data.get("size", table.shape[0]):
        raise MalformedTableError("size does not match table")
    meta = dict(data.get("meta", {}))
    name = meta.pop("name", "")
    return FiniteRack(table, name=name, meta=meta)


def qset_from_json(data: dict, rack: FiniteRack | None = None) -> QSetAction:
    if data.get("kind") != "qset":
        raise MalformedTableError("not a qset document")
    meta = data.get("meta", {})
    if rack is None:
        rack = rack_from_json(meta["rack"])
    return QSetAction(rack, _as_table(data["table"]), name=meta.get("name", ""))
