from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowmgr.chains import evaluate
from shadowmgr.cocycles import coboundary_of_1cochain
from shadowmgr.diagram import derive, library, minus_star, mirror
from shadowmgr.invariants import (
    Filters,
    InvariantMultiset,
    compare,
    count_arc_colorings,
    count_colorings,
    enumerate_colorings,
    gcd_of,
    mirror_coloring,
    negate,
    phi,
    weight,
)
from shadowmgr.repro import per_q, q_classes, surface_diagram


def check_coloring(d, m, x, c):
    """Local rules read directly off the diagram."""
    ds = derive(d)
    arc = ds.arc_of_edge
    a, r = c.arc_colors, c.region_colors
    for cr in ds.crossings:
        assert a[arc[cr.dst]] == m.op[a[arc[cr.src]], a[arc[cr.over]]]
    for v in ds.vertices:
        assert a[arc[v.w3]] == m.mul[a[arc[v.w1]], a[arc[v.w2]]]
    for e in range(ds.n_edges):
        assert r[ds.left_face[e]] == x.act[r[ds.right_face[e]], a[arc[e]]]


def brute_force_count(d, m, x):
    ds = derive(d)
    arc = ds.arc_of_edge
    n = 0
    for arcs in np.ndindex(*([m.size] * ds.n_arcs)):
        if any(arcs[arc[c.dst]] != m.op[arcs[arc[c.src]], arcs[arc[c.over]]] for c in ds.crossings):
            continue
        if any(m.mul[arcs[arc[v.w1]], arcs[arc[v.w2]]] != arcs[arc[v.w3]] for v in ds.vertices):
            continue
        for seed in range(x.size):
            regions = {0: seed}
            changed = True
            ok = True
            while changed and ok:
                changed = False
                for e in range(ds.n_edges):
                    lf, rf, col = ds.left_face[e], ds.right_face[e], arcs[arc[e]]
                    if rf in regions:
                        want = int(x.act[regions[rf], col])
                        if lf in regions:
                            ok &= regions[lf] == want
                        else:
                            regions[lf] = want
                            changed = True
                    elif lf in regions:
                        # the right region is the unique w with w * col = left
                        regions[rf] = int(np.flatnonzero(x.act[:, col] == regions[lf])[0])
                        changed = True
            n += ok and len(regions) == ds.n_faces
    return n


@pytest.mark.parametrize("name", ["O1", "2_1^2", "3_1"])
def test_counts_against_brute_force(name, matrix):
    m, x, _ = matrix["conj-S3"]
    d = library(name)
    assert count_colorings(d, m, x) == brute_force_count(d, m, x)


@pytest.mark.parametrize("which", ["R3xZ6", "conj-S3"])
def test_every_coloring_satisfies_rules(which, matrix):
    m, x, _ = matrix[which]
    for name in ("3_1", "O2", "F5"):
        d = library(name)
        for c in enumerate_colorings(d, m, x):
            check_coloring(d, m, x, c)


@pytest.mark.parametrize("which", ["ex72", "R3xZ6", "conj-S3"])
@pytest.mark.parametrize("name", ["3_1", "4_1", "O1", "2_1^2", "F5"])
def test_mirror_law_chain_level(which, name, matrix):
    """W(D; c) + W(-D*; c*) = 0 for every colouring."""
    m, x, _ = matrix[which]
    d = library(name)
    dm = minus_star(d)
    for c in enumerate_colorings(d, m, x):
        cs = mirror_coloring(d, c)
        check_coloring(dm, m, x, cs)
        assert (weight(d, m, x, c) + weight(dm, m, x, cs)).is_zero()


@pytest.mark.parametrize("name", ["3_1", "4_1", "O2"])
def test_mirror_law_multisets(name, ex72):
    d = library(name)
    a = phi(d, ex72.theta, ex72.mgr, ex72.xset).multiset
    b = phi(minus_star(d), ex72.theta, ex72.mgr, ex72.xset).multiset
    assert b == negate(a)


def test_count_law(ex72):
    for name in ("3_1", "4_1", "O2", "F2"):
        d = library(name)
        assert count_colorings(d, ex72.mgr, ex72.xset) == ex72.xset.size * count_arc_colorings(d, ex72.mgr)


def test_cohomologous_cocycles_agree(matrix):
    m, x, theta = matrix["R3xZ6"]
    h = np.random.default_rng(11).integers(0, 3, (x.size, m.size))
    other = theta + coboundary_of_1cochain(h, 3, m, x)
    assert (other.pair_values != theta.pair_values).any()
    for name in ("3_1", "4_1", "O2"):
        d = library(name)
        assert phi(d, theta, m, x).multiset == phi(d, other, m, x).multiset


def test_coboundary_vanishes_on_weights(matrix):
    m, x, _ = matrix["conj-S3"]
    h = np.random.default_rng(12).integers(0, 5, (x.size, m.size))
    delta = coboundary_of_1cochain(h, 5, m, x)
    d = library("4_1")
    for c in enumerate_colorings(d, m, x):
        assert evaluate(delta, weight(d, m, x, c)) == 0


def test_threads_do_not_change_the_result(ex72):
    d = library("F3")
    one = phi(d, ex72.theta, ex72.mgr, ex72.xset, threads=1)
    three = phi(d, ex72.theta, ex72.mgr, ex72.xset, threads=3)
    assert one.multiset == three.multiset and one.colorings == three.colorings
    assert one.to_json("F3")["multiset"] == three.to_json("F3")["multiset"]


def test_gcd_filters_partition(lemma):
    d = library("3_1")
    m, x, theta = lemma.mgr, lemma.xset, lemma.theta
    whole = phi(d, theta, m, x).multiset
    parts = [phi(d, theta, m, x, Filters(gcd=(g,))).multiset for g in (1, 2, 3, 6)]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    assert total == whole
    both = phi(d, theta, m, x, Filters(gcd=(3, 6))).multiset
    assert both == parts[2] + parts[3]


def test_arc_filter_partition(lemma):
    d, arc = surface_diagram("F5")
    values = per_q("F5")
    total = InvariantMultiset(3, ())
    for v in values.values():
        total = total + v
    assert total == phi(d, lemma.theta, lemma.mgr, lemma.xset, Filters(gcd=(3, 6))).multiset
    cls = q_classes(lemma)
    assert len(cls["Q1"]) == 3 and len(cls["Q2"]) == 24


def test_unknown_arc_rejected(ex72):
    with pytest.raises(ValueError):
        phi(library("3_1"), ex72.theta, ex72.mgr, ex72.xset, Filters(arc=999))
    with pytest.raises(ValueError):
        phi(library("3_1"), ex72.theta, ex72.mgr, ex72.xset, Filters(arc=-1))


@given(st.lists(st.integers(0, 11), max_size=6))
def test_gcd_of(zs):
    import math

    want = 12
    for z in zs:
        want = math.gcd(want, z if z else 12)
    assert gcd_of(zs, 12) == want


@given(st.dictionaries(st.integers(0, 4), st.integers(1, 50)), st.dictionaries(st.integers(0, 4), st.integers(1, 50)))
def test_multiset_algebra(a, b):
    ma, mb = InvariantMultiset.from_counter(5, a), InvariantMultiset.from_counter(5, b)
    assert (ma + mb).total == ma.total + mb.total
    assert negate(negate(ma)) == ma
    assert compare(ma, mb).equal == (ma == mb)
    assert (ma + mb).as_dict() == dict(Counter(a) + Counter(b))


def test_multiset_text():
    m = InvariantMultiset.from_counter(3, {0: 2880, 1: 1728, 2: 1152})
    assert str(m) == "{0_2880, 1_1728, 2_1152}"
    assert m.to_json() == {"0": 2880, "1": 1728, "2": 1152}
    c = compare(m, negate(m))
    assert not c.equal and c.witness == 1
