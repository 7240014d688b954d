"""End-to-end smoke tests for the Python bindings."""

import pytest

aitk = pytest.importorskip("aitk")


def test_interleave_round_trip():
    x = aitk.interleave("101", "011")
    assert x == "100111"
    assert aitk.deinterleave(x) == ("101", "011")


def test_run_program_literal():
    # literal header (unary 0), gamma(2) = "100" wait-free: rely on the
    # complexity witness instead of hand-assembling a code.
    rep = aitk.complexity("1", cap=10)
    assert rep["value"] is not None
    out = aitk.run_program(rep["witness"])
    assert out["status"] == "halted"
    assert out["output"] == "1"


def test_complexity_of_zero_block_under_budget():
    rep = aitk.complexity("0" * 19, bound="quadratic", constant=4, cap=15)
    assert rep["value"] == 15


def test_kraft_and_allocation():
    assert aitk.kraft_sum([1, 2, 3]) == "7/2^3"
    assert aitk.kc_allocate([1, 2, 3]) == ["0", "10", "110"]
    with pytest.raises(Exception):
        aitk.kc_allocate([1, 1, 1])


def test_martingale_run_is_deterministic_and_bounded():
    a = aitk.martingale_run(7, "0110100110")
    b = aitk.martingale_run(7, "0110100110")
    assert a == b
    assert a["upper_bound_ok"]


def test_build_asymmetric_pair_replays():
    art = aitk.build_pair("asymmetric")
    assert len(art["a"]) == 18
    assert len(art["b"]) == 18
    assert art["replay_failures"] == []
    assert art["artifact"].startswith("kind=asymmetric")
