"""Exact Noether-Lefschetz and Gromov-Witten computations for K3^[2]-type pencils."""

import json

from ._core import (
    ConsistencyError,
    DomainError,
    TruncationError,
    chern,
    cubic_nl_series,
    dv_nl_series,
    gv_from_gw,
    gw_from_gv,
    hls_report,
    mc_assemble,
    plus_space_dimension,
    prim_tables,
    run_cli,
    sin_kernel_coeffs,
    solve_dv_from_constraints,
    uniruled_mc,
)
from ._core import check_gwnl as _check_gwnl


def check_gwnl(family, dmax, mode="proven-only"):
    """Run the GW/NL pipeline and return the report as a dict."""
    return json.loads(_check_gwnl(family, dmax, mode))


__all__ = [
    "ConsistencyError",
    "DomainError",
    "TruncationError",
    "check_gwnl",
    "chern",
    "cubic_nl_series",
    "dv_nl_series",
    "gv_from_gw",
    "gw_from_gv",
    "hls_report",
    "mc_assemble",
    "plus_space_dimension",
    "prim_tables",
    "run_cli",
    "sin_kernel_coeffs",
    "solve_dv_from_constraints",
    "uniruled_mc",
]
