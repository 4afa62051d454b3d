import pytest

import afrel


def test_registry():
    claims = afrel.list_claims()
    assert len(claims) >= 10
    assert {"prop-4.1", "thm-6.2", "remark-6i-experiment"} <= {c["claim"] for c in claims}


def test_pbw_dimensions():
    assert afrel.pbw_dimensions("A1", 6) == [1, 3, 9, 22, 51, 108, 221]


def test_dual_coxeter():
    assert [afrel.dual_coxeter(t) for t in ("A1", "A2", "C2", "G2")] == [2, 3, 3, 4]


def test_engine_kernels():
    e = afrel.Engine("A1", 1, 6)
    assert e.dim_r == 5
    assert e.height == 4
    dims = e.kernel_dimensions()
    assert dims == [0, 0, 0, 5, 27, 86, 238]
    assert e.phi_kernel_dimensions() == dims
    assert e.obvious_closure_dimensions() == dims
    assert e.kernel_dimensions(base=True)[4] == 7
    assert e.sugawara_relations_vanish()
    assert e.singular_dimension(4) == 1


def test_verify_report():
    r = afrel.verify("thm-6.2", "A1", 1, 6)
    assert r["verdict"] == "pass"
    assert r["schema"] == 1
    assert [row["lhs_dim"] for row in r["per_degree"]] == [row["rhs_dim"] for row in r["per_degree"]]
    again = afrel.verify("thm-6.2", "A1", 1, 6, with_timing=False)
    assert "seconds" not in again


def test_config_errors():
    with pytest.raises(afrel.ConfigError):
        afrel.verify("thm-6.2", "A1", 1, 1)
    with pytest.raises(afrel.ConfigError):
        afrel.verify("no-such-claim", "A1", 1, 6)
    with pytest.raises(ValueError):
        afrel.Engine("Z9", 1, 4)
