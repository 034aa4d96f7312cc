import cmath
import math

import pytest

import dahakz


def test_subcommands_listed():
    names = dahakz.subcommands()
    assert len(names) == 15
    assert "verify-thm41" in names
    assert "window" in dahakz.keys_for("domains")


def test_domain_census():
    a1 = dahakz.run("domains", type="A1", k=1)["result"]
    assert a1["count"] == 3 and a1["bounded_count"] == 1
    a2 = dahakz.run("domains", type="A2", k=1, window=0)["result"]
    assert a2["count"] == 7 and a2["bounded_count"] == 1


def test_bounded_simple_character():
    doc = dahakz.run("simple-char", type="A1", domain="bounded", window=22)
    assert doc["result"]["domain"]["weights"] == [["1/4"]]
    assert doc["config"]["domain"] == "bounded"


def test_exact_values_are_strings():
    res = dahakz.run("intertwiner", word="1,0", mu="3/4", window=4)["result"]
    assert res["criterion"]["invertible"]
    assert all(isinstance(x, str) for row in res["weight_blocks"]["matrix"] for x in row)


def test_oracle_closed_form():
    a, b = dahakz.rank_one_oracle("-3/2", "1/2")
    assert abs(b - 3 * math.pi / 8) < 1e-14
    assert abs(a - (-1j)) < 1e-14


def test_monodromy_matches_oracle():
    a, b = dahakz.rank_one_monodromy("2/3", "1/2")
    ao, bo = dahakz.rank_one_oracle("2/3", "1/2")
    assert cmath.isclose(a, ao, abs_tol=1e-12)
    assert cmath.isclose(b, bo, abs_tol=1e-12)


def test_errors_map_to_exceptions():
    with pytest.raises(dahakz.ConfigError):
        dahakz.run("roots", type="B2")
    with pytest.raises(dahakz.ScopeError):
        dahakz.run("char", mu="1/2")
    with pytest.raises(dahakz.ToleranceError):
        dahakz.run("monodromy", mu="-3/4", tol="1e-40")
    with pytest.raises(dahakz.ScopeError):
        dahakz.rank_one_oracle("1", "1/2")


def test_selftest():
    doc = dahakz.run("schur-example", selftest=True)
    assert doc["selftest"]["passed"]
