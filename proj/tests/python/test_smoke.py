import pytest

import hopfgauge as hg


def test_scalar_arithmetic():
    i = hg.Scalar.zeta(4, 1)
    assert str(i * i) == "-1"
    assert (i * i.inverse()) == hg.Scalar(1)
    assert hg.Scalar("1/2", 4).coefficients(4) == ["1/2", "0/1"]


def test_library_calls():
    assert hg.verify_taft(3)
    chars = hg.taft_characters(2)
    assert len(chars) == 2
    assert hg.taft_gauge_parameters(3) == 8
    assert hg.taft_gauge_parameters(2) == 3


def test_galois_report():
    r = hg.report("galois-check", taft=2, q_index=1, s="1/1")
    assert r["results"]["is_galois"] is True
    assert set(r["results"]["identity_checks"].values()) == {"pass"}
    assert r["summary"]["ok"]


def test_characters_and_crossed_module():
    r = hg.report("characters", taft=3)
    assert r["results"]["count"] == 3 and r["results"]["cyclic"]
    cm = hg.report("crossed-module", taft=2, extended=True)
    assert cm["summary"]["fail"] == 0
    assert cm["results"]["crossed_module"]["action_trivial"] is False


def test_input_errors():
    with pytest.raises(hg.CommandError):
        hg.report("characters", taft=1)
    code, out, err = hg.run_cli(["no-such-command"])
    assert code == 2 and out == ""
    with pytest.raises(hg.HopfGaugeError):
        hg.Scalar("1", 4) / hg.Scalar(0)
