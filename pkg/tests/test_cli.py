import json

import pytest

from commprob.branching import build_branching
from commprob.catalog import build
from commprob.cli import cache_load, cache_store, main


@pytest.fixture
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("COMMPROB_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cp_gl23(capsys):
    code, out, _ = run(capsys, "cp", "GL(2,3)", "--n", "2")
    assert code == 0
    assert out.strip() == "1/6"


def test_cp_q8_n3(capsys):
    code, out, _ = run(capsys, "cp", "Q8", "--n", "3")
    assert code == 0
    assert out.strip() == "11/32"


def test_cp_methods_agree(capsys):
    values = {}
    for method in ("branching", "lescot", "oracle"):
        code, out, _ = run(capsys, "cp", "S(4)", "--n", "3", "--method", method)
        assert code == 0
        values[method] = out.strip()
    assert len(set(values.values())) == 1


def test_cp_json_matches_text(capsys):
    code, out, _ = run(capsys, "cp", "Q8", "--n", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "5/8"
    code, out, _ = run(capsys, "cp", "Q8", "--n", "2")
    assert out.strip() == payload["value"]


def test_abelian_cp_prints_one_over_one(capsys):
    code, out, _ = run(capsys, "cp", "C(6)", "--n", "4")
    assert code == 0
    assert out.strip() == "1/1"


def test_info(capsys):
    code, out, _ = run(capsys, "info", "U(2,2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "descriptor": "U(2,2)",
        "order": 18,
        "abelian": False,
        "class_count": 9,
        "z_class_count": 3,
    }


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "S(3)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 6
    sizes = sorted(r["size"] for r in payload["classes"])
    assert sizes == [1, 2, 3]
    for r in payload["classes"]:
        assert r["size"] * r["centralizer_order"] == 6


def test_ctuples_with_oracle(capsys):
    code, out, _ = run(capsys, "ctuples", "Q8", "--n", "2", "--oracle", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "22"
    assert payload["oracle"]["orbit_count"] == "22"
    assert payload["oracle_match"] is True


def test_feitfine_oracle(capsys):
    code, out, _ = run(capsys, "feitfine", "--d", "2", "--q", "3", "--oracle",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pairs"] == "945"
    assert payload["oracle_match"] is True


def test_invalid_descriptor_exit_2(capsys):
    code, _, err = run(capsys, "info", "GL(9,9)")
    assert code == 2
    assert "error" in err


def test_size_cap_exit_3(capsys):
    code, _, err = run(capsys, "info", "GL(3,5)")
    assert code == 3


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "feitfine", "--d", "3", "--q", "3", "--oracle")
    assert code == 3


# -- cache behavior --

def test_cache_roundtrip(cache_env, capsys):
    code, out1, _ = run(capsys, "branching", "U(2,3)", "--json")
    assert code == 0
    p1 = json.loads(out1)
    assert p1["from_cache"] is False
    code, out2, _ = run(capsys, "branching", "U(2,3)", "--json")
    p2 = json.loads(out2)
    assert p2["from_cache"] is True
    for key in ("dimension", "root_index", "column_sums", "states"):
        assert p1[key] == p2[key]


def test_cache_store_load_equal_matrix(cache_env):
    G = build("Sp(2,3)")
    bm = build_branching(G)
    assert cache_store("Sp(2,3)", G.order, bm)
    loaded = cache_load("Sp(2,3)", G.order)
    assert loaded == bm


def test_cache_miss_on_unknown(cache_env):
    assert cache_load("Sp(2,3)", 24) is None


def test_cache_corrupted_file_recovers(cache_env, capsys):
    code, _, _ = run(capsys, "branching", "D(4)", "--json")
    assert code == 0
    files = list(cache_env.glob("bm-*.json"))
    assert len(files) == 1
    files[0].write_text("{ truncated", encoding="utf-8")
    code, out, err = run(capsys, "branching", "D(4)", "--json")
    assert code == 0
    assert "warning" in err
    assert json.loads(out)["from_cache"] is False


def test_cache_wrong_order_rejected(cache_env, capsys):
    G = build("Sp(2,3)")
    bm = build_branching(G)
    cache_store("Sp(2,3)", G.order, bm)
    assert cache_load("Sp(2,3)", 25) is None


def test_cache_tampered_matrix_rejected(cache_env, capsys):
    G = build("Q8")
    bm = build_branching(G)
    cache_store("Q8", 8, bm)
    files = list(cache_env.glob("bm-*.json"))
    record = json.loads(files[0].read_text())
    record["matrix"][0] = "999"
    files[0].write_text(json.dumps(record))
    assert cache_load("Q8", 8) is None
    _ = capsys.readouterr()


def test_cache_unwritable_degrades(tmp_path, monkeypatch, capsys):
    target = tmp_path / "blocked"
    target.write_text("file, not a directory")
    monkeypatch.setenv("COMMPROB_CACHE", str(target / "sub"))
    code, out, err = run(capsys, "branching", "D(3)", "--json")
    assert code == 0
    assert "warning" in err


# -- verify command --

def test_verify_default_grid(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--grid", "default", "--json",
                       str(report))
    # exit 1: the as-printed Sp2 table rows n >= 3 mismatch (documented
    # upstream erratum), and the exit code reflects any mismatch
    assert code == 1
    rows = json.loads(report.read_text())
    from commprob.formulas import is_known_erratum_row

    bad = [r for r in rows if not r["match"]]
    assert bad and all(is_known_erratum_row(r) for r in bad)
    assert "mismatches:" in out
