"""Published invariant values used by the reproduction commands.

Multisets are dicts value -> multiplicity.  The per-class tables give the
multiset for one colour q of the marked arc; Q1 holds the 3 elements of
type 1 and Q2 the 24 elements of type 2 in (R_3)^3.
"""
from __future__ import annotations

F0 = {0: 2880, 1: 1728, 2: 1152}
MINUS_F0_STAR = {0: 2880, 1: 1152, 2: 1728}

CLASS_SIZES = {"Q1": 3, "Q2": 24}
# multiplier per added handle for each class
HANDLE_FACTOR = {"Q1": 4, "Q2": 2}

CLASS_TABLES = {
    "F2": {"Q1": {0: 48, 1: 48, 2: 96}, "Q2": {0: 12, 2: 96}},
    "F3": {"Q1": {0: 96, 1: 48, 2: 48}, "Q2": {0: 12, 1: 12}},
    "F5": {"Q1": {0: 48, 1: 48, 2: 96}, "Q2": {0: 12, 2: 96}},
}


def closed_form(surface: str, g: int) -> dict[int, int]:
    """Stated multiset of the gcd-filtered invariant of surface # O_g."""
    a, b = 4**g, 2**g
    if surface == "F2":
        return {0: 144 * (a + 2 * b), 1: 144 * a, 2: 288 * (a + b)}
    if surface == "F3":
        return {0: 288 * (a + b), 1: 144 * (a + 2 * b), 2: 144 * a}
    if surface == "F5":
        return {0: 144 * (a + 2 * b), 2: 144 * a}
    raise KeyError(surface)


def table_total(surface: str, g: int) -> dict[int, int]:
    """The sum over both classes implied by the per-class table."""
    out: dict[int, int] = {}
    for cls, table in CLASS_TABLES[surface].items():
        times = CLASS_SIZES[cls] * HANDLE_FACTOR[cls] ** g
        for v, k in table.items():
            out[v] = out.get(v, 0) + times * k
    return dict(sorted(out.items()))


# Known disagreements between the published tables and exhaustive enumeration.
NOTES = {
    "F2": "the Q2 entry 2_96 is inconsistent with the closed form; enumeration gives 2_12, which the closed form requires",
    "F5": "the published closed form for F5 equals the enumerated total of F5 # O_(g+1), one handle more than F5 # O_g; the published per-class rows repeat those of F2",
}
