import numpy as np
import pytest

from shadowmgr.algebra import dihedral_quandle, regular_qset, ts_rack
from shadowmgr.mgr import (
    GFamily,
    XSetAction,
    associated_mgr,
    check_group,
    conjugation_mgr,
    cyclic_table,
    index_xset,
    mgr_from_json,
    mgr_to_json,
    trivial_xset,
    verify_mgr,
    verify_xset,
    xset_from_json,
    xset_to_json,
)

from conftest import S3


def test_group_check():
    assert check_group(cyclic_table(6))
    assert check_group(np.array(S3))
    bad = np.array(S3)
    bad[1, 1] = 1
    assert not check_group(bad)


def test_conjugation_mgr():
    m = conjugation_mgr(S3)
    assert verify_mgr(m)
    assert verify_xset(m, m.op)
    assert verify_xset(m, index_xset(m).act)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_associated_mgr(k):
    r = dihedral_quandle(3)
    m, x = associated_mgr(r, k, regular_qset(r))
    assert m.kappa == 2 * k and m.size == 3 * 2 * k
    assert verify_mgr(m)
    assert verify_xset(m, x.act)
    # (a,g) * (b,h) = (a *^h b, g)
    for a in range(3):
        for b in range(3):
            for g in range(m.kappa):
                for h in range(m.kappa):
                    got = m.pair(m.op[m.index(a, g), m.index(b, h)])
                    assert got == (r.star(a, b, h), g)


def test_associated_mgr_of_ts_rack():
    m, x = associated_mgr(ts_rack(6, 5, 2), 1)
    assert verify_mgr(m) and x.size == 1


def test_mutated_mgr_fails():
    r = dihedral_quandle(3)
    m, _ = associated_mgr(r, 1)
    op = m.op.copy()
    op[0, 3], op[1, 3] = op[1, 3], op[0, 3]
    bad = type(m)(m.components, op, rack=r, kappa=m.kappa)
    rep = verify_mgr(bad)
    assert not rep and rep.witness is not None


def test_gfamily():
    assert GFamily(dihedral_quandle(3), 6).check()
    with pytest.raises(ValueError):
        GFamily(dihedral_quandle(3), 3)


def test_bad_xset():
    m = conjugation_mgr(S3)
    act = m.op.copy()
    act[:, 0] = np.roll(act[:, 0], 1)  # identity no longer acts trivially
    assert not verify_xset(m, act)


def test_json_roundtrip():
    r = dihedral_quandle(3)
    m, x = associated_mgr(r, 1, regular_qset(r))
    back = mgr_from_json(mgr_to_json(m))
    assert np.array_equal(back.op, m.op) and back.size == m.size
    bx = xset_from_json(xset_to_json(x))
    assert np.array_equal(bx.act, x.act)
    assert trivial_xset(m).size == 1
    XSetAction(m, x.act)
