import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowmgr.diagram import (
    add_handle,
    add_kink,
    add_meridian,
    add_puncture,
    boundary_sum,
    connect_sum,
    derive,
    describe,
    dumps,
    from_code,
    from_json,
    invert_surface,
    library,
    loads,
    minus_star,
    mirror,
    reflect,
    relabel,
    reverse,
    reverse_s1,
    switch,
    to_json,
    validate,
    with_handles,
)
from shadowmgr.diagram.library import TREFOIL

NAMES = ["circle", "3_1", "4_1", "2_1^2", "F0", "F2", "F3", "F5", "O1", "O2", "O3", "3_1*", "-3_1", "-F0*", "F2#O2"]


@pytest.mark.parametrize("name", NAMES)
def test_library_diagrams_validate(name):
    d = library(name)
    assert validate(d), name
    dumped = dumps(d)
    assert dumps(loads(dumped)) == dumped


def test_library_statistics():
    # (arcs, regions, crossings, vertices, writhe)
    stats = {
        "3_1": (7, 7, 4, 2, 4),
        "4_1": (8, 8, 5, 2, 1),
        "2_1^2": (1, 3, 1, 0, 1),
        "F0": (28, 18, 10, 12, 0),
        "O1": (4, 4, 1, 2, 1),
    }
    for name, want in stats.items():
        ds = derive(library(name))
        assert (ds.n_arcs, ds.n_faces, len(ds.crossings), len(ds.vertices), ds.writhe()) == want, name


def test_unknown_name():
    with pytest.raises(KeyError):
        library("7_4")


@pytest.mark.parametrize("name", ["3_1", "4_1", "F0", "F2"])
def test_transforms(name):
    d = library(name)
    w = derive(d).writhe()
    for f in (reflect, reverse):
        assert to_json(f(f(d))) == to_json(d)
    # switching twice rotates each crossing by a half turn: the same crossing
    ss = derive(switch(switch(d)))
    assert [c.sign for c in ss.crossings] == [c.sign for c in derive(d).crossings]
    assert to_json(switch(switch(switch(switch(d))))) == to_json(d)
    assert derive(mirror(d)).writhe() == -w
    assert derive(invert_surface(d)).writhe() == w
    assert derive(minus_star(d)).writhe() == -w
    for f in (mirror, invert_surface, minus_star, reverse):
        assert validate(f(d))
    # relabelling nodes is only a change of presentation
    order = list(reversed(range(d.n_nodes)))
    r = relabel(d, order)
    assert validate(r) and derive(r).n_arcs == derive(d).n_arcs


def test_handles_and_punctures():
    d = library("3_1")
    ds = derive(d)
    h, e = add_handle(d, 0, track=True)
    hs = derive(h)
    assert validate(h)
    assert len(hs.vertices) == len(ds.vertices) + 4 and len(hs.crossings) == len(ds.crossings) + 1
    # the tracked edge runs into the first vertex of the handle
    node, _ = hs.head[e]
    assert h.kinds[node] == "V" and node >= d.n_nodes
    p = add_puncture(d, 2)
    assert validate(p) and len(derive(p).vertices) == len(ds.vertices) + 2
    d2, e2 = with_handles(d, 2, 0, track=True)
    assert validate(d2) and d2.name == "3_1#O2"
    assert validate(add_meridian(d, 3, under=False))


def test_sums():
    t = library("3_1")
    b = boundary_sum(t, 0, mirror(t), 1)
    assert validate(b)
    c = connect_sum(library("2_1^2"), 0, library("2_1^2"), 0)
    assert validate(c) and len(derive(c).vertices) == 4


@pytest.mark.parametrize("sign,first", list(itertools.product([1, -1], ["under", "over"])))
def test_kinks(sign, first):
    d = library("3_1")
    k = add_kink(d, 1, sign, first)
    assert validate(k)
    assert derive(k).writhe() == derive(d).writhe() + sign
    with pytest.raises(ValueError):
        add_kink(d, 0, 1, "sideways")


def test_reverse_s1():
    band = from_code(TREFOIL, name="3_1 band")
    r = reverse_s1(band, 0)
    assert validate(r)
    assert derive(r).writhe() == derive(band).writhe()
    with pytest.raises(ValueError):
        reverse_s1(library("3_1"), 0)  # passes through vertices


def test_json_errors():
    data = to_json(library("3_1"))
    with pytest.raises(ValueError):
        from_json(dict(data, version=999))
    bad = dict(data, half_edges=[dict(data["half_edges"][0])] * 2 + data["half_edges"][2:])
    with pytest.raises(ValueError):
        from_json(bad)


def test_validate_rejects_non_planar():
    # one crossing with its two strands swapped into an impossible rotation
    code = [("X", [1, 2, -1, -2])]
    rep = validate(from_code(code))
    assert not rep


def test_describe():
    text = describe(library("3_1"))
    assert "4 crossings" in text and "2 vertices" in text


@given(st.sampled_from(["3_1", "4_1", "2_1^2", "O1"]), st.integers(0, 3), st.lists(st.sampled_from(["mirror", "reverse", "handle", "puncture", "kink"]), max_size=3))
def test_random_surgery_stays_valid(name, edge, steps):
    d = library(name)
    for s in steps:
        e = edge % derive(d).n_edges
        d = {
            "mirror": lambda: mirror(d),
            "reverse": lambda: reverse(d),
            "handle": lambda: add_handle(d, e),
            "puncture": lambda: add_puncture(d, e),
            "kink": lambda: add_kink(d, e, 1, "over"),
        }[s]()
        assert validate(d)
        assert dumps(loads(dumps(d))) == dumps(d)
