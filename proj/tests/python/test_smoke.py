import json
from fractions import Fraction

import pytest

import nlgw


def test_dv_series():
    s = nlgw.dv_nl_series(23)
    assert s[0] == -10
    assert s[11] == 640
    assert s[22] == 510840
    assert all(s[d] == 0 for d in (1, 3, 4, 5, 9))
    assert isinstance(s[12], Fraction)


def test_constraints_and_cubic():
    assert nlgw.solve_dv_from_constraints(44)[15] == 11440
    c = nlgw.cubic_nl_series()
    assert (c[1], c[3], c[4], c[7]) == (0, 192, 3402, 917568)
    assert nlgw.plus_space_dimension(11) == 6
    assert nlgw.plus_space_dimension(3) == 2


def test_hls():
    rows = {r["e"]: r["status"] for r in nlgw.hls_report(11, 15)}
    assert rows[4] == "HLS"
    assert rows[3] == "absent"
    assert rows[15] == "not-HLS"


def test_chern_and_tables():
    assert nlgw.chern("fano-pencil") == {"euler": -3960, "grr": -6, "singular_fibers": 192}
    f, g = nlgw.prim_tables(1)
    assert g[-8] == 1 and g[-2] == 4 and g[0] == 30
    assert nlgw.mc_assemble(2, 6)[1] == 60705
    assert nlgw.uniruled_mc(3, Fraction(-9, 2), 1) == Fraction(4, 27)


def test_gwnl_cubic():
    rep = nlgw.check_gwnl("fano-pencil", 8, "hybrid")
    assert rep["full_match"]
    assert rep["rows"][1]["lhs"] == "122472"


def test_bps_round_trip():
    r = {(g, m): Fraction(g + 2 * m, m + 1) for g in range(3) for m in range(1, 5)}
    assert nlgw.gv_from_gw(nlgw.gw_from_gv(r, 2, 4), 2, 4) == r
    assert nlgw.sin_kernel_coeffs(0, 1) == [16, Fraction(4, 3)]


def test_errors_and_cli():
    with pytest.raises(ValueError):
        nlgw.chern("not-a-family")
    code, out, _ = nlgw.run_cli(["nl-dv", "--terms", "12"])
    assert code == 0
    assert json.loads(out)["series"][1] == {"D": 11, "NL": "640"}
