import io
import json
import os
from pathlib import Path

import pytest

from linorder.cli import exact_decimal, run

GOLDEN_DIR = Path(__file__).parent / "golden"
REGEN = os.environ.get("LINORDER_REGEN_GOLDEN") == "1"

GOLDEN = {
    "classify_R2": ["classify", "R*2", "--json"],
    "classify_Q22": ["classify", "(Q*2)*2", "--json"],
    "enumerate_Q2": ["enumerate", "Q*2", "--count", "8", "--json"],
    "jumps_fin3_fin2": ["jumps", "fin(3)+fin(2)", "--count", "10", "--json"],
    "embed_Z_r": ["embed", "Z", "--target", "r", "--element", "3", "--precision", "10", "--json"],
    "embed_Z_q": ["embed", "Z", "--target", "q", "--element", "-2", "--json"],
    "embed_fin2Q_r2": ["embed", "fin(2)+Q", "--element", "0:1", "--dense", "omit:0:1", "--json"],
    "homog_control": ["homog-extend", "--pair", "0.0 -> 5.0", "--pair", "1.1 -> 7.1",
                      "--probe", "1/2.0", "--probe", "-10.0", "--json"],
    "verify_Q2_reals": ["verify", "Q*2", "--suite", "reals", "--count", "50", "--seed", "3", "--json"],
    "verify_wfin2_dense": ["verify", "w+fin(2)", "--suite", "dense", "--dense", "omit:1:0",
                           "--count", "100", "--budget", "500", "--json"],
    "demo_collision": ["demo-collision", "--json"],
    "element_Q2": ["element", "Q*2", "--element", "1/2.0", "--other", "1/2.1", "--json"],
    "element_fin2Q_bit": ["element", "fin(2)+Q", "--element", "0:1", "--dense", "omit:0:1", "--json"],
    "embed_Q_e1": ["embed", "Q", "--target", "e1", "--element", "3/2", "--stage", "40", "--json"],
    "error_R2_reals": ["embed", "R*2", "--target", "r", "--element", "0.0", "--json"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_json(name):
    code, out, _ = invoke(GOLDEN[name])
    path = GOLDEN_DIR / f"{name}.json"
    if REGEN:
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()
    json.loads(out)
    assert code == (1 if name.startswith("error") else 0)


def test_same_seed_same_bytes():
    argv = ["verify", "Q", "--suite", "embed", "--count", "30", "--seed", "17"]
    assert invoke(argv) == invoke(argv)


def test_classify_split_reals():
    code, out, _ = invoke(["classify", "R*2", "--json"])
    r = json.loads(out)
    assert code == 0
    assert r["separable"] is True
    assert r["jump_cardinality"] == "continuum"
    assert r["embeds_into_reals"] is False
    assert r["left_separable"] is False


def test_embed_integer_human_output():
    code, out, _ = invoke(["embed", "Z", "--target", "r", "--element", "3", "--precision", "10"])
    assert code == 0
    assert out.strip() == "3 -> 1.9892578125 +-2^-10"
    js = json.loads(invoke(["embed", "Z", "--target", "r", "--element", "3", "--json"])[1])
    assert js["lower"] == "2037/1024" and js["err_exp"] == -10


def test_demo_collision_reports_both_sides():
    code, out, _ = invoke(["demo-collision"])
    assert code == 0
    assert "collision: true" in out
    assert "separated: true" in out


@pytest.mark.parametrize("argv", [
    ["classify", "Q+"],
    ["enumerate", "w"],
    ["enumerate", "w", "--count", "-1"],
    ["embed", "Z", "--element", "3", "--target", "x"],
    ["embed", "Z", "--element", "3", "--dense", "bogus"],
    ["frobnicate"],
])
def test_usage_errors_exit_2_with_grammar(argv):
    code, out, err = invoke(argv)
    assert code == 2
    assert out == ""
    assert "term grammar" in err


@pytest.mark.parametrize("argv, error", [
    (["embed", "R*2", "--target", "r", "--element", "0.0"], "not_embeddable_into_reals"),
    (["jumps", "R*2", "--count", "3"], "uncountable_jumps"),
    (["embed", "Z", "--element", "1/2"], None),
    (["homog-extend", "--pair", "0.0 -> 5.1"], "partial_map"),
    (["verify", "fin(3)", "--suite", "dense", "--dense", "only:0,2"], None),
])
def test_domain_errors_exit_1(argv, error):
    code, out, _ = invoke(argv)
    assert code == 1
    if error:
        assert json.loads(out)["error"] == error


def test_map_file(tmp_path):
    f = tmp_path / "map.txt"
    f.write_text("0.0 -> 5.0\n1.1 -> 7.1\n")
    code, out, _ = invoke(["homog-extend", "--map-file", str(f), "--probe", "1.1", "--json"])
    assert code == 0
    probe = json.loads(out)["probes"][0]
    assert probe["image"] == "7.1"


def test_exact_decimal():
    from fractions import Fraction
    assert exact_decimal(Fraction(2037, 1024)) == "1.9892578125"
    assert exact_decimal(Fraction(1, 3), 5) == "0.33333..."


def _json(argv):
    code, out, _ = invoke(argv + ["--json"])
    assert code == 0
    return json.loads(out)


def test_element_examples():
    r = _json(["element", "Q*2", "--element", "1/2.0"])
    assert (r["in_J_left"], r["in_J_right"]) == (True, False)
    assert _json(["element", "Z", "--element", "0", "--other", "1"])["J_related"] is True
    assert _json(["element", "Q", "--element", "0", "--other", "1"])["J_related"] is False
    assert _json(["element", "Q*2", "--element", "1/2.0", "--other", "1/2.1"])["compare"] == "LT"
    assert _json(["element", "fin(3)+Q", "--element", "0:2", "--other", "1:-7"])["compare"] == "LT"
    assert _json(["element", "Z", "--element", "4", "--other", "4"])["compare"] == "EQ"
    assert _json(["element", "Z*2", "--element", "3.1"])["succ"] == "4.0"
    assert _json(["element", "Q", "--element", "1/2"])["succ"] is None
    assert _json(["element", "w+fin(2)", "--element", "1:0"])["pred"] is None
    assert _json(["element", "fin(2)+Q", "--element", "0:1", "--dense", "omit:0:1"])["jump_bit"] == 1
    assert _json(["element", "w", "--element", "5"])["jump_bit"] == 0


def test_element_membership_in_split_reals():
    assert _json(["element", "R*2", "--element=-3/7.1"])["in_dense_set"] is True
    assert _json(["element", "R*2", "--element", "sqrt(2).0"])["in_dense_set"] is False


def test_classify_reports_bounds():
    r = _json(["classify", "w+fin(2)"])
    assert (r["min"], r["max"]) == ("0:0", "1:1")
    r = _json(["classify", "w*+w"])
    assert (r["has_min"], r["has_max"], r["min"], r["max"]) == (False, False, None, None)


def test_e1_target():
    assert _json(["embed", "fin(2)", "--target", "e1", "--element", "1", "--stage", "2"])["value"] == "1"


def test_probe_reports_classes():
    r = _json(["homog-extend", "--pair", "0.0 -> 5.0", "--pair", "1.1 -> 7.1", "--probe", "1/2.1"])
    p = r["probes"][0]
    assert (p["image"], p["class"], p["image_class"]) == ("6.1", "1/2", "6")
