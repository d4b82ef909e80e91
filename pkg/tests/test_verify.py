import json

import pytest

from drinfeld import codec
from drinfeld import verify as V


@pytest.fixture(scope="module")
def rep():
    return V.run(("algebra", "ore", "td"), V.Grid(qs=(2,), prec=16, ext=2))


def test_report_shape(rep):
    doc = rep.to_json()
    assert doc["schema"] == V.REPORT_SCHEMA and "timing" not in doc
    assert "timing" in rep.to_json(with_timing=True)
    assert doc["summary"]["fail"] == 0, rep.failures()
    for r in doc["checks"]:
        assert r["anchor"] == V.ANCHORS[f"{r['suite']}.{r['check']}"]
        assert r["status"] in ("pass", "fail", "unverified")


def test_product_formula_is_unverified_not_pass(rep):
    recs = [r for r in rep.records if r["check"] == "product_formula"]
    assert recs and all(r["status"] == "unverified" for r in recs)


def test_guard_turns_errors_into_failures():
    rep = V.Report(V.Grid())
    assert rep.guard("td", "oracle", {}, lambda: 1 / 0) == "fail"
    assert "ZeroDivisionError" in rep.records[0]["detail"]
    with pytest.raises(KeyError):
        rep.add("td", "no_such_check", {}, True)


def test_unknown_suite():
    with pytest.raises(KeyError):
        V.run(("nope",), V.Grid())


@pytest.mark.parametrize("q,prec", V.GOLDEN_SPECS)
def test_packaged_golden_files(q, prec):
    assert V.golden_compare(q, prec, V.golden_dir()) is True
    doc = json.loads((V.golden_dir() / V.golden_name(q, prec)).read_text())
    assert doc["schema"] == codec.SCHEMA and doc["q"] == q and doc["prec"] == prec


def test_golden_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(V.GOLDEN_ENV, str(tmp_path))
    assert V.golden_dir() == tmp_path
    assert V.golden_compare(2, 32, V.golden_dir()) == (False, "missing td_coeffs_q2_prec32.json")
    V.write_golden(tmp_path, specs=((2, 32),))
    assert V.golden_compare(2, 32, tmp_path) is True
