import operadlab
import pytest


def reliable_h(table):
    return [r["h_dim"] for r in table["rows"] if r["reliable"]]


def test_catalog():
    assert "Ass" in operadlab.catalog_names()


def test_souls():
    assert reliable_h(operadlab.soul_cohomology("ass", 5)["table"]) == [0, 0, 0, 0]
    assert reliable_h(operadlab.soul_cohomology("D", 4)["table"])[:2] == [0, 1]
    assert set(reliable_h(operadlab.soul_cohomology("mag", 5, non_sigma=True)["table"])) == {0}


def test_zp():
    assert [operadlab.zp_dim("Ass", n) for n in (1, 2, 3)] == [1, 2, 6]
    assert operadlab.zp_dim("d", 2) == 4


def test_blocks():
    sizes = {b["kappa"]: b["sizes"] for b in operadlab.perm_blocks(5)}
    assert sizes["(2 1)"] == [1, 4, 10, 20]


def test_dual_numbers():
    alg = {"operad": "Ass", "dim": 2, "structure": {"mu": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]}}
    assert reliable_h(operadlab.cochain_cohomology(alg))[0] == 1


def test_verify_subset():
    res = operadlab.verify("5,6")
    assert [r["pass"] for r in res] == [True, True]


def test_errors():
    with pytest.raises(ValueError):
        operadlab.soul_cohomology("nonsense")
    with pytest.raises(ValueError):
        operadlab.cochain_cohomology("{")
