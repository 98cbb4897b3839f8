"""Subgroup data and stratification tables."""

from pathlib import Path

import pytest

from elastsym import grouptab as gt

GOLDEN = Path(__file__).parent / "golden" / "tables.txt"


def test_tables_match_golden_file():
    assert gt.render_tables() == GOLDEN.read_text()


@pytest.mark.parametrize(
    "h, ela, h4",
    [("1", 21, 9), ("Z2", 13, 5), ("D2", 9, 3), ("D3", 6, 2), ("D4", 6, 2), ("O(2)", 5, 1), ("O", 3, 1), ("SO(3)", 2, 0)],
)
def test_fixed_point_dims(h, ela, h4):
    assert gt.fixed_point_dim(h, gt.ELA) == ela
    assert gt.fixed_point_dim(h, gt.H4) == h4


def test_dimensions_of_other_subgroups():
    assert gt.fixed_point_dim("T", gt.H4) == 1
    assert gt.fixed_point_dim("I", gt.H4) == 0
    assert gt.fixed_point_dim("SO(2)", gt.H4) == 1
    assert gt.fixed_point_dim("Z3", gt.H4) == 3
    assert gt.fixed_point_dim("D2", gt.quadratic_forms(2)) == 6


def test_normalizers_and_monodromy():
    assert gt.normalizer("D2") == "O"
    assert gt.normalizer("D3") == "D6"
    assert gt.normalizer("Z2") == "O(2)"
    assert gt.monodromy("D2") == ("S3", 6)
    assert gt.monodromy("1") == ("SO(3)", None)


def test_stratum_dimensions():
    d = gt.class_info("D2").ela
    assert (d.dim_fixed, d.dim_orbit_space, d.dim_stratum) == (9, 9, 12)
    assert gt.class_info("O").h4.dim_stratum == 4


def test_unknown_subgroup():
    with pytest.raises(gt.UnknownSubgroupError):
        gt.normalizer("Q8")
    with pytest.raises(gt.UnknownSubgroupError):
        gt.fixed_point_dim("D1", gt.ELA)


def test_json_tables():
    t = gt.tables_json()
    assert [r["H"] for r in t["ela"]] == list(gt.ELASTICITY_CLASSES)
    assert t["h4"][0]["card"] is None
