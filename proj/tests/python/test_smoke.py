import pytest

import stc_canon
from stc_canon import _core


def test_version_is_nonempty():
    assert stc_canon.version()


def test_reprint_canonicalizes_layout():
    assert stc_canon.reprint("(app\n  (lam x   x) true ) ; note") == "(app (lam x x) true)"
    assert stc_canon.reprint("true") == "true"


def test_reprint_rejects_garbage():
    with pytest.raises(ValueError):
        stc_canon.reprint("((")


def test_infer_type():
    assert stc_canon.infer_type("true") == "bool"
    assert stc_canon.infer_type("(pi (x bool) bool)") == "tp"
    assert stc_canon.infer_type("bool") == "tp"
    assert stc_canon.infer_type("tp") == "u0"
    assert stc_canon.infer_type("(tm bool)") == "u0"


def test_infer_type_semantic_failure_is_runtime_error():
    with pytest.raises(RuntimeError):
        stc_canon.infer_type("(app true false)")


def test_normalize_including_the_checking_fallback():
    assert stc_canon.normalize("(app (lam x x) true)") == "true"
    # the redex head cannot synthesize on its own; checking at bool still works
    assert stc_canon.normalize("(app (lam x x) false)") == "false"
    assert stc_canon.normalize("(if (x bool) true false true)") == "false"


def test_convertible():
    assert stc_canon.convertible("bool", "(app (lam x x) true)", "true")
    assert not stc_canon.convertible("bool", "true", "false")
    # eta: every function equals its expansion
    assert stc_canon.convertible(
        "(pi (x bool) bool)", "(lam x x)", "(lam x (app (lam y y) x))"
    )


def test_check_reports_the_type():
    item = stc_canon.check("(app (lam x x) true)")
    assert item["ok"] is True
    assert item["type"] == "bool"


def test_check_semantic_failure_reports_the_error():
    item = stc_canon.check("(app true true)")
    assert item["ok"] is False
    assert item["error"]["code"] == "not_a_function"


def test_canon_reports_tag_and_witness():
    item = stc_canon.canon("(app (lam x (if (y bool) x false true)) true)")
    assert item["ok"] is True
    assert item["tag"] == "false"
    assert item["tracking_ok"] is True
    assert item["witness_trace"]


def test_canon_usage_failure_raises():
    with pytest.raises(stc_canon.CliError):
        stc_canon.canon("(app")


def test_fuel_limit_is_honored():
    item = stc_canon.check("(app (lam x x) true)", fuel=2)
    assert item["ok"] is False
    assert item["error"]["code"] == "fuel_exhausted"


def test_laws_report():
    rep = stc_canon.laws(size=2)
    assert rep["all_pass"] is True
    assert len(rep["rules"]) == 23


def test_calf_cost():
    item = stc_canon.calf("(step (bind (ret true) (x (step (ret x)))))")
    assert item["ok"] is True
    assert item["cost"] == 2
    assert item["tag"] == "true"


def test_run_passthrough():
    res = stc_canon.run(["laws"])
    assert res["code"] == 0
    assert res["out"].count("[PASS]") == 23
    assert "all laws hold at size bound 3" in res["out"]
    assert stc_canon.run(["check"])["code"] == 2
    assert stc_canon.run(["nope"])["code"] == 2
    assert stc_canon.run(["check", "-e", "(app true true)"])["code"] == 1


def test_core_direct_bindings():
    r = _core.canon("(if (x bool) true true false)")
    assert r["tag"] == "true"
    assert r["ok"] is True
    assert r["steps"] >= 1
    c = _core.cost("(force (thunk (step (ret false))))")
    assert c["cost"] == 1
    assert c["tag"] == "false"
    assert c["ok"] is True
    with pytest.raises(RuntimeError):
        _core.canon("(lam x x)")
    with pytest.raises(ValueError):
        _core.cost("(ret")
