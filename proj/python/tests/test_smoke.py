import pathlib

import qderham as q

MANIFEST = str(pathlib.Path(__file__).resolve().parents[2] / "data" / "checks.json")


def test_polynomials():
    assert q.cyclotomic(12) == "1 - q^2 + q^4"
    assert q.q_integer(4) == "1 + q + q^2 + q^3"
    assert q.context_roundtrip("Zp(3,5);(q-1)^10") == "Zp(3,5);(q-1)^10"
    assert q.sha256_hex("abc") == (
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )


def test_cohomology():
    pieces = q.qdr_cohomology(1, "Z;(q-1)^6", 4, level=0)
    by_key = {(p["degree"], p["weight"]): p["invariant_factors"] for p in pieces}
    assert by_key[("1", "2")] == ["64"]
    assert by_key[("1", "3")] == ["27", "27"]
    classical = q.qdr_cohomology(1, "Z;(q-1)^6", 4, level=0, classical=True)
    by_key = {(p["degree"], p["weight"]): p["invariant_factors"] for p in classical}
    assert by_key[("1", "2")] == ["2"]
    assert by_key[("1", "4")] == ["4"]


def test_divided_power_witness():
    w = q.qpd_verify(2, 1, 2)
    assert w["ok"] is True
    assert w["stages"] == ["1"]


def test_fixed_point_rings():
    circle = q.pi_genuine(1, 8)
    assert circle["display"] == "Z[b]"
    assert [d["degree"] for d in circle["degrees"]] == ["0", "2", "4", "6", "8"]

    c3 = q.pi_genuine(3, 4)
    deg4 = [d for d in c3["degrees"] if d["degree"] == "4"][0]
    assert deg4["rank"] == "3"
    assert deg4["basis_labels"] == ["b^2", "b^2*q", "b^2*q^2"]

    pc = q.pi_geometric_p_complete(2, 1, 1, 5, 6)
    assert pc["beta_image"] == "-2"

    assert q.fracture(2, 6, 5, 6)["ok"] is True
    assert q.pullback(2, 6, 5)["ok"] is True
    assert q.inflation(2, 3, 6)["ok"] is True


def test_check_suite():
    rep = q.run_checks(MANIFEST, jobs=4)
    assert rep["exit"] == "0"
    assert rep["counts"]["pass"] == "24"
    assert q.run_checks_raw(MANIFEST, "*", 1) == q.run_checks_raw(MANIFEST, "*", 7)
