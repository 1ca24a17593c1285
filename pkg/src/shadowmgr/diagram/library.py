"""Built-in diagrams.

Closed surfaces are drawn with one disk removed.  The torus around a knot K
is the band along K (blackboard framing) plus a meridian chord that leaves
one side of the band, passes under the band once and comes back on the
other side.  Boundary components of annuli are kept as they are.
"""
from __future__ import annotations

from functools import lru_cache

from .model import SurfaceDiagram, from_code
from .ops import (
    add_handle,
    add_meridian,
    add_puncture,
    boundary_sum,
    invert_surface,
    minus_star,
    mirror,
)

# planar diagrams of knots: each crossing lists (under in, over, under out, over)
# counterclockwise, with signed edge labels (+ arrives, - leaves)
TREFOIL = [("X", [1, -5, -2, 4]), ("X", [3, -1, -4, 6]), ("X", [5, -3, -6, 2])]
FIGURE_EIGHT = [("X", [4, -2, -5, 1]), ("X", [8, -6, -1, 5]), ("X", [6, 3, -7, -4]), ("X", [2, 7, -3, -8])]
# one positive kink: the strand passes under, loops round and passes over itself
KINK = [("X", [2, -2, -1, 1])]


def circle(orientation: int = 1) -> SurfaceDiagram:
    return SurfaceDiagram((), (), (orientation,), "circle")


def knot_band(code, name: str) -> SurfaceDiagram:
    return from_code(code, name=name)


def knot_torus(code, name: str, edge: int = 0) -> SurfaceDiagram:
    return add_meridian(from_code(code), edge).renamed(name)


def hopf_band(sign: int = 1) -> SurfaceDiagram:
    d = from_code(KINK, name="2_1^2")
    return d if sign > 0 else mirror(d).renamed("2_1^2*")


def unknotted(g: int) -> SurfaceDiagram:
    """O_g with one disk removed: a meridian ear on a circle, then g-1 handles."""
    if g < 1:
        raise ValueError("O_g needs g >= 1")
    d = add_meridian(circle(), 0)
    for _ in range(g - 1):
        d = add_handle(d, 0)
    return d.renamed(f"O{g}")


def trefoil() -> SurfaceDiagram:
    return knot_torus(TREFOIL, "3_1")


def figure_eight() -> SurfaceDiagram:
    return knot_torus(FIGURE_EIGHT, "4_1")


def F0() -> SurfaceDiagram:
    """3_1 # 3_1* # 2_1^2 # (2_1^2)*: two closed tori and two Hopf bands."""
    t = trefoil()
    d = boundary_sum(t, 0, mirror(t), 0)
    d = boundary_sum(d, 0, hopf_band(1), 0)
    d = boundary_sum(d, 0, hopf_band(-1), 0)
    return add_puncture(d, 0).renamed("F0")


def F2() -> SurfaceDiagram:
    t = trefoil()
    return boundary_sum(t, 0, invert_surface(t), 0).renamed("F2")


def F3() -> SurfaceDiagram:
    t = trefoil()
    return boundary_sum(t, 0, mirror(t), 0).renamed("F3")


def F5() -> SurfaceDiagram:
    return trefoil().renamed("F5")


def with_handles(d: SurfaceDiagram, g: int, edge: int = 0, track: bool = False):
    """d # O_g, attaching every handle to the arc of ``edge`` (the marked arc).

    With ``track`` also returns an edge of the marked arc in the result.
    """
    name = d.name
    for _ in range(g):
        d, edge = add_handle(d, edge, track=True)
    d = d.renamed(f"{name}#O{g}" if g else name)
    return (d, edge) if track else d


_BUILDERS = {
    "circle": circle,
    "3_1": trefoil,
    "4_1": figure_eight,
    "2_1^2": lambda: hopf_band(1),
    "F0": F0,
    "F2": F2,
    "F3": F3,
    "F5": F5,
}


def names() -> list[str]:
    return sorted(_BUILDERS) + ["O<g>", "<name>*", "-<name>", "-<name>*", "<name>#O<g>"]


@lru_cache(maxsize=None)
def library(name: str) -> SurfaceDiagram:
    """Look up a diagram by name.

    Suffix ``*`` gives the mirror image, prefix ``-`` the orientation-reversed
    surface, ``-X*`` the diagram -D*, ``X#O<g>`` adds g handles and ``O<g>``
    is the unknotted closed surface of genus g.
    """
    base, _, handles = name.partition("#O")
    if handles:
        if not handles.isdigit():
            raise KeyError(name)
        return with_handles(library(base), int(handles)).renamed(name)
    if base.startswith("-") and base.endswith("*"):
        return minus_star(library(base[1:-1])).renamed(name)
    if base.endswith("*"):
        return mirror(library(base[:-1])).renamed(name)
    if base.startswith("-"):
        return invert_surface(library(base[1:])).renamed(name)
    if base.startswith("O") and base[1:].isdigit():
        return unknotted(int(base[1:]))
    if base not in _BUILDERS:
        raise KeyError(f"unknown diagram {name!r}")
    return _BUILDERS[base]().renamed(base)
