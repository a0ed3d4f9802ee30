import math

import pytest

hstab = pytest.importorskip("hstab")


def test_torus_verdict_and_witnesses():
    v = hstab.analyze("torus:n=2,r=1,1,p=1")
    assert v["label"] == "indefinite"
    assert v["witness_neg"]["value"] == pytest.approx(-8 * math.pi**2)
    assert v["witness_pos"]["value"] > 0


def test_hyperbola_certificate():
    v = hstab.analyze("hyperbola:n=2,r=1,3,eps=+,+")
    assert v["label"] == "negative_definite"
    assert v["certificate"]["residual"] <= 1e-10


def test_unknown_catalog_id():
    with pytest.raises(ValueError):
        hstab.analyze("sphere:n=2")


def test_closed_forms():
    assert hstab.torus_mode_value([1.0, 1.0], 1, [1, 1]) == pytest.approx(-8 * math.pi**2)
    lam1, stable = hstab.spectral_criterion([1.0, 1.0], 2.0)
    assert lam1 == 1.0 and not stable
    m = hstab.hyperbola_matrix([1.0, 1.0, 1.0], [1, 1, 1])
    assert m["inertia"] == (2, 1, 0)
    assert m["w_value"] == pytest.approx(-3.0)
    w = hstab.wirtinger_bound(1.0, 0.0, 2 * math.pi)
    assert w["verdict"] == "stable"
    assert w["threshold"] == pytest.approx(4.0)


def test_tube_table_matches():
    rows = hstab.tube_table()
    assert len(rows) == 8
    assert all(r["match"] for r in rows)
    assert len(hstab.tube_ids()) == 16


def test_quick_checks():
    report = hstab.verify()
    by_id = {c["id"]: c for c in report["checks"]}
    assert by_id["5"]["pass"]
    assert by_id["11"]["pass"]
