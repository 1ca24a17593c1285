"""End-to-end acceptance checks, one test per criterion.

Each test prints the computed values; the terminal summary lists PASS/FAIL per criterion.
"""
import time

import numpy as np
import pytest

from shadowmgr import reference
from shadowmgr.chains import BatchBoundary, Chain, ChainContext, evaluate, format_generator, gen
from shadowmgr.cocycles import (
    check_mgr_2cocycle,
    check_rack_2cocycle,
    coboundary_of_1cochain,
    lift_mgr,
    lift_parallel,
    mgr_lift_license,
    mochizuki_data,
)
from shadowmgr.diagram import library, move_pairs
from shadowmgr.diagram.library import _BUILDERS
from shadowmgr.invariants import InvariantMultiset, compare, count_arc_colorings, count_colorings, phi
from shadowmgr.mgr import associated_mgr, conjugation_mgr, extend_mgr_by_cocycle, trivial_xset, verify_mgr
from shadowmgr.repro import class_tables, per_q, pipeline, q_classes

from conftest import S3

criterion = pytest.mark.criterion


def ms(d):
    return InvariantMultiset.from_counter(3, d)


@pytest.fixture(scope="module")
def ex72_chain():
    """The single-letter pipeline built step by step."""
    r, y, theta = mochizuki_data(3)
    assert check_rack_2cocycle(theta, r, y)
    q, qy, bar = lift_parallel(theta, r, y, 3, [1], [1])
    m0, _ = associated_mgr(q, 1, qy)
    lic = mgr_lift_license(bar, q, qy, m0.kappa, 1)
    m, x, tilde = lift_mgr(bar, q, qy, 1)
    return q, qy, bar, m, x, tilde, lic


@criterion(1, "F0 invariant over Q x Z2")
def test_criterion_1_f0(ex72_chain):
    q, qy, bar, m, x, tilde, lic = ex72_chain
    assert "sums-vanish" in lic and m.size == 54 and m.kappa == 2
    start = time.perf_counter()
    res = phi(library("F0"), tilde, m, x)
    took = time.perf_counter() - start
    print(f"Phi(F0) = {res.multiset}, published {ms(reference.F0)}, {took:.1f} s")
    assert res.multiset == ms(reference.F0)
    assert took < 60


@criterion(2, "mirror certificate for -F0*")
def test_criterion_2_mirror(ex72_chain):
    *_, m, x, tilde, _ = ex72_chain
    a = phi(library("F0"), tilde, m, x).multiset
    b = phi(library("-F0*"), tilde, m, x).multiset
    cmp = compare(a, b)
    print(f"Phi(-F0*) = {b}, published {ms(reference.MINUS_F0_STAR)}; compare: {cmp}")
    assert b == ms(reference.MINUS_F0_STAR)
    assert not cmp.equal


@criterion(3, "per-class tables for F2, F3, F5")
def test_criterion_3_class_tables():
    reports = {s: class_tables(s, 0) for s in ("F2", "F3", "F5")}
    for rep in reports.values():
        print(rep.text())
    checks = {c.label: c for rep in reports.values() for c in rep.checks}
    # the Q1 entries and the whole F3 row must match exactly
    assert checks["F2#O0 Q1 per q (table)"].status == "pass"
    assert checks["F3#O0 Q1 per q (table)"].status == "pass"
    assert reports["F3"].ok
    assert checks["F2#O0 total (closed form)"].status == "pass"
    # every remaining disagreement has a documented explanation
    flagged = {c.label for c in checks.values() if c.status != "pass"}
    assert flagged <= {"F2#O0 Q2 per q (table)", "F2#O0 total (table sum)"} | {
        l for l in checks if l.startswith("F5")
    }
    for s in ("F2", "F5"):
        if not reports[s].ok:
            assert reference.NOTES[s] in reports[s].notes
    # the F5 note: its closed form is met with one extra handle
    shifted = sum(per_q("F5", 1).values(), ms({}))
    print(f"F5#O1 total {shifted}, published F5 closed form at g=0 {ms(reference.closed_form('F5', 0))}")
    assert shifted == ms(reference.closed_form("F5", 0))


@criterion(4, "handle law on F2")
def test_criterion_4_handle_law():
    classes = q_classes(pipeline("triple-letter"))
    base, more = per_q("F2", 0), per_q("F2", 1)
    for cls, factor in (("Q1", 4), ("Q2", 2)):
        for q in classes[cls]:
            scaled = ms({v: factor * k for v, k in base[q].counts})
            assert more[q] == scaled, (cls, q)
        q = classes[cls][0]
        print(f"{cls}: F2 {base[q]} ({base[q].total}), F2#O1 {more[q]} ({more[q].total}), factor {factor}")


def _random_generator(ctx, rng, shape):
    m = ctx.mgr
    blocks = []
    for length in shape:
        members = m.component_members(int(rng.integers(m.n_components)))
        blocks.append(tuple(int(rng.choice(members)) for _ in range(length)))
    return gen(int(rng.integers(ctx.xset.size)), *blocks)


SHAPES3 = [(1, 1, 1), (2, 1), (1, 2), (3,)]


@criterion(5, "boundary squares to zero and is equivariant")
def test_criterion_5_chain_complex(ex72, lemma):
    start = time.perf_counter()
    bb = BatchBoundary(ex72.mgr, ex72.xset)
    total, failures = 0, 0
    for v in range(ex72.xset.size):
        for fam in bb.families(3, v):
            total += len(fam[0])
            failures += len(bb.dd_failures(*fam))
    print(f"exhaustive dd on Q x Z2: {total} generators, {failures} failures")
    assert failures == 0 and total > 0

    ctx = ChainContext(lemma.mgr, lemma.xset)
    rng = np.random.default_rng(2024)
    for i in range(10_000):
        g = _random_generator(ctx, rng, SHAPES3[i % 4])
        assert ctx.boundary(ctx.boundary_generator(g)).is_zero(), format_generator(g)
    for i in range(10_000):
        g = _random_generator(ctx, rng, (SHAPES3 + [(1, 1), (2,)])[i % 6])
        w = int(rng.integers(lemma.mgr.size))
        assert ctx.boundary(ctx.act(Chain.of(g), w)) == ctx.act(ctx.boundary_generator(g), w)
    took = time.perf_counter() - start
    print(f"10000 random dd and 10000 equivariance samples on Q x Z6, {took:.1f} s total")
    assert took < 120


def _rack_condition_holds(theta, rack, qset, v, a, b, c):
    t, op, act = theta.pair_values, rack.op, qset.act
    lhs = t[act[v, a], b, c] + t[v, a, c] + t[act[v, c], op[a, c], op[b, c]]
    rhs = t[v, b, c] + t[act[v, b], op[a, b], c] + t[v, a, b]
    return (lhs - rhs) % theta.modulus == 0


def _mgr_witness_generator(rep):
    w = rep.witness
    return {
        "mgr-condition-1": lambda: gen(w[0], (w[1],), (w[2],), (w[3],)),
        "mgr-condition-2": lambda: gen(w[0], (w[1],), (w[2], w[3])),
        "mgr-condition-3": lambda: gen(w[0], (w[1], w[2]), (w[3],)),
        "mgr-condition-4": lambda: gen(w[0], (w[1], w[2], w[3])),
    }[rep.axiom]()


@criterion(6, "cocycle checks and mutants")
def test_criterion_6_cocycles(ex72, lemma):
    rng = np.random.default_rng(6)
    racks = {p: mochizuki_data(p) for p in (3, 5)}
    racks["ex72 rack"] = (ex72.rack, ex72.qset, ex72.rack_cocycle)
    for name, (r, y, theta) in racks.items():
        assert check_rack_2cocycle(theta, r, y), name
        for _ in range(10):
            key = (int(rng.integers(y.size)), int(rng.integers(r.size)), int(rng.integers(r.size)))
            rep = check_rack_2cocycle(theta.with_entry(key, 1), r, y)
            assert not rep and rep.witness is not None
            assert not _rack_condition_holds(theta.with_entry(key, 1), r, y, *rep.witness)
        print(f"{name}: cocycle, 10 mutants rejected")
    for name, p in (("ex72", ex72), ("lemma", lemma)):
        m, x, theta = p.mgr, p.xset, p.theta
        assert check_mgr_2cocycle(theta, m, x), name
        ctx = ChainContext(m, x)
        for i in range(10):
            table = ("pair", "block")[i % 2]
            key = (int(rng.integers(x.size)), int(rng.integers(m.size)), int(rng.integers(m.size)))
            if table == "block":
                lam = int(rng.integers(m.n_components))
                members = m.component_members(lam)
                key = (key[0], int(rng.choice(members)), int(rng.choice(members)))
            bad = theta.with_entry(key, 1, table)
            rep = check_mgr_2cocycle(bad, m, x)
            assert not rep and rep.witness is not None
            g = _mgr_witness_generator(rep)
            assert evaluate(bad, ctx.boundary_generator(g)) != 0
            assert evaluate(theta, ctx.boundary_generator(g)) == 0
        print(f"{name} MGR cocycle (N={m.size}): cocycle, 10 mutants rejected with chain-level witnesses")


@criterion(7, "invariance under the move catalogue")
def test_criterion_7_moves(matrix):
    pairs = move_pairs()
    tags = {p.tag.split(":")[0] for p in pairs}
    print(f"{len(pairs)} move pairs covering {sorted(tags)}")
    for which, (m, x, theta) in matrix.items():
        for pair in pairs:
            a = phi(pair.before, theta, m, x, debug=True)
            b = phi(pair.after, theta, m, x, debug=True)
            assert a.colorings == b.colorings, (which, pair.tag)
            assert a.multiset == b.multiset, (which, pair.tag)
    assert {f"R{i}" for i in range(1, 7)} <= tags


LIBRARY = sorted(_BUILDERS) + ["O1", "O2", "-F0*", "F2#O1", "F3*"]


@criterion(8, "coloring-count law on the library")
def test_criterion_8_count_law(ex72):
    m, x = ex72.mgr, ex72.xset
    for name in LIBRARY:
        d = library(name)
        full, arcs = count_colorings(d, m, x), count_arc_colorings(d, m)
        print(f"{name}: #Col_Y = {full} = {x.size} * {arcs}")
        assert full == x.size * arcs, name


@criterion(9, "extension MGR by a 2-cocycle")
def test_criterion_9_extension():
    c = conjugation_mgr(S3, name="conj(S3)")
    x = trivial_xset(c)
    theta = coboundary_of_1cochain(np.random.default_rng(2).integers(0, 3, (1, 6)), 3, c, x)
    assert check_mgr_2cocycle(theta, c, x)
    ext = extend_mgr_by_cocycle(c, 3, theta)
    assert ext.size == 18 and verify_mgr(ext)
    rng = np.random.default_rng(9)
    rejected = 0
    for i in range(40):
        table = ("pair", "block")[i % 2]
        key = (0, int(rng.integers(6)), int(rng.integers(6)))
        bad = theta.with_entry(key, 1, table)
        assert not check_mgr_2cocycle(bad, c, x)
        rep = verify_mgr(extend_mgr_by_cocycle(c, 3, bad))
        assert not rep, key
        rejected += 1
    print(f"extension of conj(S3) by Z3: N={ext.size}, verified; {rejected} mutated cochains give non-MGRs")
    assert rejected >= 10
