import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowmgr.chains import BatchBoundary, Chain, ChainContext, evaluate, format_generator, gen, parse_generator


@pytest.fixture(scope="module", params=["ex72", "R3xZ6", "conj-S3"])
def ctx(request, matrix):
    m, x, theta = matrix[request.param]
    return ChainContext(m, x), theta


def random_generator(ctx, rng, shape):
    m = ctx.mgr
    v = int(rng.integers(ctx.xset.size))
    blocks = []
    for length in shape:
        lam = int(rng.integers(m.n_components))
        members = m.component_members(lam)
        blocks.append(tuple(int(rng.choice(members)) for _ in range(length)))
    return gen(v, *blocks)


SHAPES3 = [(1, 1, 1), (2, 1), (1, 2), (3,)]


def test_boundary_squared_sampled(ctx):
    c, _ = ctx
    rng = np.random.default_rng(7)
    for shape in SHAPES3:
        for _ in range(150):
            g = random_generator(c, rng, shape)
            assert c.boundary(c.boundary_generator(g)).is_zero(), format_generator(g)


def test_leibniz_route_agrees(ctx):
    c, _ = ctx
    rng = np.random.default_rng(8)
    for shape in SHAPES3 + [(1, 1), (2,), (1,)]:
        for _ in range(100):
            g = random_generator(c, rng, shape)
            assert c.boundary_generator(g) == c.boundary_leibniz(g)


def test_equivariance(ctx):
    c, _ = ctx
    rng = np.random.default_rng(9)
    for shape in SHAPES3 + [(1, 1), (2,)]:
        for _ in range(100):
            g = random_generator(c, rng, shape)
            x = int(rng.integers(c.mgr.size))
            assert c.boundary(c.act(Chain.of(g), x)) == c.act(c.boundary_generator(g), x)


def test_batch_boundary_matches_generic(ctx):
    c, _ = ctx
    bb = BatchBoundary(c.mgr, c.xset)
    rng = np.random.default_rng(10)
    for deg in (2, 3):
        for v, blocks in bb.families(deg, int(rng.integers(c.xset.size))):
            terms = bb.boundary(v, blocks)
            for r in rng.integers(0, len(v), 60):
                g = gen(int(v[r]), *(b[r] for b in blocks))
                assert bb.chain(terms, int(r)) == c.boundary_generator(g)


def test_batch_dd_detects_broken_tables(matrix):
    m, x, _ = matrix["conj-S3"]
    bb = BatchBoundary(m, x)
    bb.op = bb.op.copy()
    bb.op[1, 2] = bb.op[2, 2]  # not a rack any more
    assert sum(len(bb.dd_failures(*f)) for f in bb.families(3, 0)) > 0


def test_explicit_boundaries(matrix):
    m, x, _ = matrix["conj-S3"]
    c = ChainContext(m, x)
    v, a, b = 1, 3, 4
    d = c.boundary_generator(gen(v, (a,), (b,)))
    op, act = m.op, x.act
    expect = Chain({
        gen(act[v, a], (b,)): 1,
        gen(v, (b,)): -1,
        gen(act[v, b], (op[a, b],)): -1,
        gen(v, (a,)): 1,
    })
    assert d == expect
    d = c.boundary_generator(gen(v, (a, b)))
    expect = Chain({gen(act[v, a], (b,)): 1, gen(v, (m.mul[a, b],)): -1, gen(v, (a,)): 1})
    assert d == expect


def test_mixed_components_rejected(ex72):
    c = ChainContext(ex72.mgr, ex72.xset)
    with pytest.raises(ValueError):
        c.boundary_generator(gen(0, (0, 2)))  # elements of different components
    with pytest.raises(ValueError):
        c.boundary_generator(gen(0, (0,), (0,), (0,), (0,)))


@given(st.integers(0, 9), st.lists(st.lists(st.integers(0, 99), min_size=1, max_size=3), max_size=3))
def test_text_form_roundtrip(v, blocks):
    g = gen(v, *blocks)
    assert parse_generator(format_generator(g)) == g


def test_chain_arithmetic():
    g, h = gen(0, (1,), (2,)), gen(1, (1,), (2,))
    c = Chain({g: 2, h: -1})
    assert (c - c).is_zero()
    assert (3 * c)[g] == 6
    with pytest.raises(ValueError):
        Chain({g: 1, gen(0, (1,)): 1})


def test_evaluate(matrix):
    _, _, theta = matrix["R3xZ6"]
    g = gen(1, (2,), (5,))
    assert evaluate(theta, Chain({g: 2})) == (2 * theta.value(g)) % theta.modulus
    with pytest.raises(ValueError):
        evaluate(theta, Chain.of(gen(0, (1,))))
