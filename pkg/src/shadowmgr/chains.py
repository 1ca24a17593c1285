"""The chain complex C_n(X)_Y of an MGR X with an X-set Y, for n <= 3.

A generator is a pair ``(v, blocks)`` where ``v`` indexes Y and ``blocks`` is a
tuple of non-empty tuples of MGR elements, each tuple inside one component.
Its degree is the total number of elements.  ``<v><x><y>`` is
``(v, ((x,), (y,)))`` and ``<v><x1,x2>`` is ``(v, ((x1, x2),))``.

Text form used in debug output::

    <v| x1 . x2 | y1 >

with blocks separated by ``|`` and entries inside a block by ``.``.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping

import numpy as np

from .mgr import FiniteMGR, XSetAction, describe_element

MAX_DEGREE = 3

Blocks = tuple[tuple[int, ...], ...]
Generator = tuple[int, Blocks]

_interned: dict = {}


def gen(v: int, *blocks: Iterable[int]) -> Generator:
    """Build (and intern) a generator; ``gen(v, (x,), (y1, y2))`` is <v><x><y1,y2>."""
    key = (int(v), tuple(tuple(int(x) for x in b) for b in blocks))
    return _interned.setdefault(key, key)


def degree(g: Generator) -> int:
    return sum(len(b) for b in g[1])


class Chain(Mapping):
    """Integer formal sum of generators of a single degree; immutable."""

    __slots__ = ("_terms", "_degree")

    def __init__(self, terms: Mapping[Generator, int] | Iterable[tuple[Generator, int]] = (), deg: int | None = None):
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            acc[g] += c
        self._terms = {g: c for g, c in acc.items() if c}
        degs = {degree(g) for g in self._terms}
        if len(degs) > 1:
            raise ValueError(f"mixed degrees {sorted(degs)} in one chain")
        self._degree = degs.pop() if degs else deg

    @classmethod
    def of(cls, g: Generator, coeff: int = 1) -> "Chain":
        return cls({g: coeff})

    @property
    def degree(self) -> int | None:
        return self._degree

    def __getitem__(self, g):
        return self._terms.get(g, 0)

    def __iter__(self) -> Iterator[Generator]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Chain":
        return Chain({g: -c for g, c in self._terms.items()}, self._degree)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k: int) -> "Chain":
        return Chain({g: k * c for g, c in self._terms.items()}, self._degree)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Chain):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for g in self:
            c = self._terms[g]
            parts.append(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}{format_generator(g)}")
        return " ".join(parts).lstrip("+ ")


def format_generator(g: Generator, m: FiniteMGR | None = None) -> str:
    name = (lambda x: describe_element(m, x)) if m is not None else str
    inner = " | ".join(" . ".join(name(x) for x in b) for b in g[1])
    return f"<{g[0]}| {inner} >" if inner else f"<{g[0]}|>"


def parse_generator(text: str) -> Generator:
    body = text.strip()
    if not (body.startswith("<") and body.endswith(">")):
        raise ValueError(f"not a generator: {text!r}")
    head, _, rest = body[1:-1].partition("|")
    rest = rest.strip()
    blocks = [tuple(int(x) for x in blk.split(".")) for blk in rest.split("|")] if rest else []
    return gen(int(head), *blocks)


class ChainContext:
    """Bundles an MGR with an X-set so chains can be acted on and differentiated."""

    def __init__(self, mgr: FiniteMGR, xset: XSetAction):
        if xset.mgr is not mgr and xset.act.shape[1] != mgr.size:
            raise ValueError("X-set does not belong to this MGR")
        self.mgr = mgr
        self.xset = xset
        self._op = mgr.op.tolist()
        self._mul = mgr.mul.tolist()
        self._act = xset.act.tolist()
        self._comp = mgr.comp_of.tolist()

    def check(self, g: Generator) -> None:
        v, blocks = g
        if not 0 <= v < len(self._act):
            raise ValueError(f"region index {v} out of range")
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            lam = self._comp[b[0]]
            if any(self._comp[x] != lam for x in b):
                raise ValueError(f"block {b} mixes components")
        if degree(g) > MAX_DEGREE:
            raise ValueError(f"degree {degree(g)} exceeds the supported maximum {MAX_DEGREE}")

    def product(self, block: tuple[int, ...]) -> int:
        acc = block[0]
        for x in block[1:]:
            acc = self._mul[acc][x]
        return acc

    def act_generator(self, g: Generator, x: int) -> Generator:
        """<v><blocks> * x = <v★x><blocks*x>."""
        v, blocks = g
        return gen(self._act[v][x], *(tuple(self._op[y][x] for y in b) for b in blocks))

    def act_word(self, v: int, blocks: Blocks, word: tuple[int, ...]) -> Generator:
        g = gen(v, *blocks)
        for x in word:
            g = self.act_generator(g, x)
        return g

    def act(self, c: Chain, x: int) -> Chain:
        return Chain([(self.act_generator(g, x), k) for g, k in c.items()], c.degree)

    def _tilde(self, block: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...] | None, int]]:
        """Terms of the block operator on <x_1..x_m>.

        Returns (acting word, new block or None when it vanishes, sign).  The
        first term is *x_1 <x_2..x_m>; the others replace x_i x_{i+1} by their
        product, and the last drops x_m.
        """
        m = len(block)
        terms = [((block[0],), block[1:] or None, 1)]
        for i in range(1, m):
            merged = block[: i - 1] + (self._mul[block[i - 1]][block[i]],) + block[i + 1 :]
            terms.append(((), merged, (-1) ** i))
        terms.append(((), block[:-1] or None, (-1) ** m))
        return terms

    def boundary_generator(self, g: Generator) -> Chain:
        self.check(g)
        v, blocks = g
        if degree(g) <= 1 and not blocks:
            return Chain({}, None)
        out: dict = defaultdict(int)
        prefix_len = 0
        for idx, block in enumerate(blocks):
            prefix, suffix = blocks[:idx], blocks[idx + 1 :]
            sign = (-1) ** prefix_len
            for word, new_block, s in self._tilde(block):
                head = self.act_word(v, prefix, word)
                mid = (new_block,) if new_block is not None else ()
                out[gen(head[0], *head[1], *mid, *suffix)] += sign * s
            prefix_len += len(block)
        return Chain(out, degree(g) - 1)

    def boundary(self, c: Chain) -> Chain:
        acc: dict = defaultdict(int)
        for g, k in c.items():
            for h, j in self.boundary_generator(g).items():
                acc[h] += k * j
        deg = c.degree - 1 if c.degree else None
        return Chain(acc, deg)

    def boundary_leibniz(self, g: Generator) -> Chain:
        """Boundary computed by peeling off the last block:
        d(w<b>) = d(w)<b> + (-1)^|w| w d~<b>.  Independent route used in tests."""
        self.check(g)
        v, blocks = g
        if not blocks:
            return Chain({}, None)
        *rest, last = blocks
        w = gen(v, *rest)
        out: dict = defaultdict(int)
        for h, k in self.boundary_leibniz(w).items():
            out[gen(h[0], *h[1], last)] += k
        sign = (-1) ** degree(w)
        for word, new_block, s in self._tilde(last):
            head = self.act_word(v, tuple(rest), word)
            mid = (new_block,) if new_block is not None else ()
            out[gen(head[0], *head[1], *mid)] += sign * s
        return Chain(out, degree(g) - 1)

    def is_cycle(self, c: Chain) -> bool:
        if c.is_zero():
            return True
        return self.boundary(c).is_zero()


def evaluate(theta, c: Chain) -> int:
    """Linear evaluation of a 2-cochain on a 2-chain, reduced mod the cochain's modulus."""
    if c.is_zero():
        return 0
    if c.degree != 2:
        raise ValueError("2-cochains evaluate on degree-2 chains only")
    total = 0
    for g, k in c.items():
        total += k * theta.value(g)
    return total % theta.modulus


def chain_from_terms(terms: Iterable[tuple[Generator, int]]) -> Chain:
    return Chain(list(terms))


# Batched boundary.  A family is (v, blocks): v has shape (n,) and blocks is a
# tuple of (n, len) arrays, one row per generator.  Used to sweep whole
# degrees at once; agrees term by term with ChainContext.boundary_generator.

Family = tuple[np.ndarray, tuple[np.ndarray, ...]]
_SHAPE_SLOTS = 16


class BatchBoundary:
    def __init__(self, mgr: FiniteMGR, xset: XSetAction):
        self.mgr = mgr
        self.op = np.asarray(mgr.op)
        self.mul = np.asarray(mgr.mul)
        self.act = np.asarray(xset.act)
        self.N = mgr.size
        self.K = xset.size
        self._shapes: dict[tuple[int, ...], int] = {}

    def boundary(self, v: np.ndarray, blocks: tuple[np.ndarray, ...]) -> list[tuple[np.ndarray, tuple[np.ndarray, ...], int]]:
        """Terms (v', blocks', sign) of the boundary of every row."""
        terms = []
        prefix_len = 0
        for idx, b in enumerate(blocks):
            prefix, suffix = blocks[:idx], blocks[idx + 1 :]
            sign = -1 if prefix_len % 2 else 1
            m = b.shape[1]
            x1 = b[:, 0]
            head = tuple(self.op[blk, x1[:, None]] for blk in prefix)
            terms.append((self.act[v, x1], head + ((b[:, 1:],) if m > 1 else ()) + suffix, sign))
            for i in range(1, m):
                merged = np.concatenate([b[:, : i - 1], self.mul[b[:, i - 1], b[:, i]][:, None], b[:, i + 1 :]], axis=1)
                terms.append((v, prefix + (merged,) + suffix, sign * (-1) ** i))
            terms.append((v, prefix + ((b[:, :-1],) if m > 1 else ()) + suffix, sign * (-1) ** m))
            prefix_len += m
        return terms

    def keys(self, v: np.ndarray, blocks: tuple[np.ndarray, ...]) -> np.ndarray:
        """Integer code of each row's generator, distinct across shapes."""
        shape = tuple(b.shape[1] for b in blocks)
        sid = self._shapes.setdefault(shape, len(self._shapes))
        if sid >= _SHAPE_SLOTS:
            raise ValueError("too many generator shapes")
        code = v.astype(np.int64)
        for b in blocks:
            for j in range(b.shape[1]):
                code = code * self.N + b[:, j]
        return code * _SHAPE_SLOTS + sid

    def dd_failures(self, v: np.ndarray, blocks: tuple[np.ndarray, ...]) -> np.ndarray:
        """Rows whose boundary of the boundary is non-zero."""
        n = len(v)
        keys, signs = [], []
        for v1, b1, s1 in self.boundary(v, blocks):
            for v2, b2, s2 in self.boundary(v1, b1):
                keys.append(self.keys(v2, b2))
                signs.append(np.full(n, s1 * s2, dtype=np.int64))
        if not keys:
            return np.zeros(0, dtype=np.int64)
        k = np.stack(keys, 1)
        span = int(k.max()) + 1
        rows = np.repeat(np.arange(n, dtype=np.int64), k.shape[1])
        _, inverse = np.unique(rows * span + k.ravel(), return_inverse=True)
        totals = np.bincount(inverse, weights=np.stack(signs, 1).ravel())
        bad = np.zeros(n, dtype=bool)
        bad[rows[np.flatnonzero(totals[inverse] != 0)]] = True
        return np.flatnonzero(bad)

    def chain(self, terms, row: int) -> Chain:
        return Chain([(gen(int(v[row]), *(b[row] for b in blocks)), s) for v, blocks, s in terms])

    def families(self, degree: int, v: int) -> list[tuple[np.ndarray, tuple[np.ndarray, ...]]]:
        """Every generator of the given degree (2 or 3) with region colour v."""
        N = self.N
        singles = np.arange(N)
        pairs = self.mgr.same_component_pairs()
        grid = lambda *arrs: [a.ravel() for a in np.meshgrid(*arrs, indexing="ij")]
        out = []
        if degree == 2:
            x, y = grid(singles, singles)
            out.append((x[:, None], y[:, None]))
            out.append((pairs,))
        elif degree == 3:
            x, y, z = grid(singles, singles, singles)
            out.append((x[:, None], y[:, None], z[:, None]))
            p, y = grid(np.arange(len(pairs)), singles)
            out.append((pairs[p], y[:, None]))
            out.append((y[:, None], pairs[p]))
            out.append((self.mgr.same_component_triples(),))
        else:
            raise ValueError("families are provided for degrees 2 and 3")
        return [(np.full(len(b[0]), v, dtype=np.int64), tuple(np.ascontiguousarray(x) for x in b)) for b in out]
