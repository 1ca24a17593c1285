"""Recipes for the algebra/cocycle pipelines and run configuration.

A recipe is a short text such as ``"mochizuki:3 parallel:3:1,2,3 mgr:3"``
(spaces may replace the colons before numbers):

    mochizuki:P              Mochizuki's cocycle on R_P acting on itself
    ts:N:T:S:F:G:H           the linear cocycle f x + g y + h z on the (t,s)-rack Z_N
    parallel:N:W             lift to Q^N; W lists the word letters as signed 1-based indices
    mgr:K                    lift to the associated MGR Q x Z_(K type)

Every cochain built this way records its provenance, and
``CocycleRecipe.from_provenance`` inverts that record.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .algebra import FiniteRack, QSetAction
from .cocycles import Cochain2, lift_mgr, lift_parallel, mochizuki_data, ts_cocycle
from .mgr import FiniteMGR, XSetAction

PRESETS = {
    # R_3 cubed acting through the first coordinate, Z_2 groups
    "single-letter": "mochizuki:3 parallel:3:1 mgr:1",
    # R_3 cubed acting through all three coordinates, Z_6 groups
    "triple-letter": "mochizuki:3 parallel:3:1,2,3 mgr:3",
}


class RecipeError(ValueError):
    pass


_NUMBERS = re.compile(r"^-?\d+(,-?\d+)*$")


def _join_numbers(tokens: list[str]) -> list[str]:
    # "mochizuki 3 mgr 1" reads the same as "mochizuki:3 mgr:1"
    out: list[str] = []
    for tok in tokens:
        if out and _NUMBERS.match(tok):
            out[-1] += ":" + tok
        else:
            out.append(tok)
    return out


@dataclass(frozen=True)
class CocycleRecipe:
    base: str = "mochizuki"
    params: tuple[int, ...] = (3,)
    n: int | None = None
    word: tuple[int, ...] = ()
    k: int | None = None

    @classmethod
    def parse(cls, text: str) -> "CocycleRecipe":
        text = PRESETS.get(text.strip(), text)
        tokens = _join_numbers(text.split())
        if not tokens:
            raise RecipeError("empty recipe")
        try:
            head, *rest = tokens[0].split(":")
            if head == "mochizuki":
                base, params = head, (int(rest[0]),)
                if len(rest) != 1:
                    raise RecipeError("mochizuki takes one parameter")
            elif head == "ts":
                base, params = head, tuple(int(x) for x in rest)
                if len(params) != 6:
                    raise RecipeError("ts takes six parameters N:T:S:F:G:H")
            else:
                raise RecipeError(f"unknown base {head!r}")
            n, word, k = None, (), None
            for tok in tokens[1:]:
                name, *args = tok.split(":")
                if name == "parallel" and n is None and k is None and len(args) == 2:
                    n, word = int(args[0]), tuple(int(x) for x in args[1].split(","))
                elif name == "mgr" and k is None and len(args) == 1:
                    k = int(args[0])
                else:
                    raise RecipeError(f"unexpected step {tok!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, RecipeError):
                raise
            raise RecipeError(f"cannot parse recipe {text!r}: {exc}") from exc
        if n is not None and (not word or any(x == 0 or abs(x) > n for x in word)):
            raise RecipeError("word letters must be non-zero indices in 1..n")
        return cls(base, params, n, word, k)

    def to_text(self) -> str:
        parts = [":".join([self.base, *map(str, self.params)])]
        if self.n is not None:
            parts.append(f"parallel:{self.n}:" + ",".join(map(str, self.word)))
        if self.k is not None:
            parts.append(f"mgr:{self.k}")
        return " ".join(parts)

    @classmethod
    def from_provenance(cls, prov: dict) -> "CocycleRecipe":
        n, word, k = None, (), None
        node = prov
        if node.get("construction") == "lift-mgr":
            k = int(node["k"])
            node = node["base"]
        if node.get("construction") == "lift-parallel":
            n = int(node["n"])
            word = tuple(int(e) * int(i) for e, i in zip(node["signs"], node["indices"]))
            node = node["base"]
        c = node.get("construction")
        if c == "mochizuki":
            return cls("mochizuki", (int(node["p"]),), n, word, k)
        if c == "ts":
            return cls("ts", tuple(int(node[x]) for x in "n t s f g h".split()), n, word, k)
        raise RecipeError(f"provenance {prov!r} cannot be replayed")

    def build(self) -> "Pipeline":
        if self.base == "mochizuki":
            rack, qset, theta = mochizuki_data(*self.params)
        else:
            rack, qset, theta = ts_cocycle(*self.params)
        if self.n is not None:
            signs = [1 if x > 0 else -1 for x in self.word]
            indices = [abs(x) for x in self.word]
            rack, qset, theta = lift_parallel(theta, rack, qset, self.n, signs, indices)
        out = Pipeline(self, rack, qset, theta)
        if self.k is not None:
            out.mgr, out.xset, out.mgr_cocycle = lift_mgr(theta, rack, qset, self.k)
        return out


@dataclass
class Pipeline:
    recipe: CocycleRecipe
    rack: FiniteRack
    qset: QSetAction
    rack_cocycle: Cochain2
    mgr: FiniteMGR | None = None
    xset: XSetAction | None = None
    mgr_cocycle: Cochain2 | None = None

    @property
    def theta(self) -> Cochain2:
        return self.mgr_cocycle if self.mgr_cocycle is not None else self.rack_cocycle


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    out: str | None = None
    threads: int = 1
    debug_assert: bool = False
    fmt: str = "json"
    timing: bool = False
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.fmt not in ("json", "text"):
            raise ValueError("format must be json or text")


@dataclass(frozen=True)
class ClassTableConfig:
    """Per-class refinement of the gcd-filtered invariant at a marked arc.

    The classes group elements of Q by their type.
    """

    surface: str
    handles: int = 0
    recipe: str = "triple-letter"
    gcd: tuple[int, ...] = (3, 6)
    marked_edge: int = 0
