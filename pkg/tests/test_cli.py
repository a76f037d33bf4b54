import importlib.resources
import json

import jsonschema
import pytest

from proofmean.cli import main

ID_ND = "(nd ident (imp-i x (hyp x p)))"
DETOUR_ND = "(nd detour (and-e1 (and-i (imp-i x (hyp x p)) (imp-i y (hyp y q)))))"
WEAK_1 = "(imp-i x (imp-i z q (hyp x p)))"
WEAK_2 = "(imp-i y (imp-i z q (hyp y p)))"
REUSE_ND = "(and-i (hyp x p) (hyp x p))"
PAIR_1 = "(imp-i y (imp-i x (and-i (hyp x p) (hyp y p))))"
PAIR_2 = "(imp-i x (imp-i y (and-i (hyp x p) (hyp y p))))"
FST_CASE = (
    r"(imp-i u (and-e1 (or-e (hyp u (p/\p)\/(p/\p)) x (hyp x p/\p) y (hyp y p/\p))))"
)
SND_CASE = (
    r"(imp-i u (and-e2 (or-e (hyp u (p/\p)\/(p/\p)) x (hyp x p/\p) y (hyp y p/\p))))"
)


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture(scope="module")
def schema():
    text = importlib.resources.files("proofmean").joinpath("schema.json").read_text()
    return json.loads(text)


def run_json(capsys, schema, argv):
    code = main(argv)
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, schema)
    return code, payload


def test_check_prints_the_judgment_and_tree(write, capsys):
    path = write("id.nd", ID_ND)
    assert main(["check", path]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == r"|- \x:p. x : p -> p"
    assert out[1].startswith("imp-i x  [")
    assert out[2].startswith("  hyp x p  [x:p |- x : p]")


def test_check_shows_open_hypotheses(write, capsys):
    path = write("open.nd", "(hyp x p)")
    assert main(["check", path]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "x:p |- x : p"


def test_check_json_is_schema_valid(write, capsys, schema):
    path = write("id.nd", ID_ND)
    code, payload = run_json(capsys, schema, ["check", path, "--json"])
    assert code == 0
    assert payload["command"] == "check"
    assert payload["inputs"] == [path]
    assert payload["judgment"] == r"|- \x:p. x : p -> p"
    assert payload["details"]["calculus"] == "nd"
    assert payload["details"]["name"] == "ident"


def test_check_failure_exits_1(write, capsys):
    path = write("bad.nd", "(and-e1 (hyp x p))")
    assert main(["check", path]) == 1
    assert "error:" in capsys.readouterr().err


def test_parse_failures_exit_2(write, capsys):
    assert main(["check", write("broken.nd", "(imp-i")]) == 2
    assert main(["check", write("tonk.nd", "(tonk-i (hyp x p))")]) == 2
    assert main(["check", write("dangling.nd", "(imp-i z (hyp x p))")]) == 2
    assert main(["check", "/nonexistent/no.nd"]) == 2
    capsys.readouterr()


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["frobnicate", "x"]) == 2
    capsys.readouterr()


def test_term_command(write, capsys, schema):
    path = write("id.nd", "(imp-i a (hyp a p))")
    assert main(["term", path]) == 0
    assert capsys.readouterr().out.strip() == r"\a:p. a"
    assert main(["term", path, "--canonical"]) == 0
    assert capsys.readouterr().out.strip() == r"\x1:p. x1"
    code, payload = run_json(capsys, schema, ["term", path, "--json"])
    assert code == 0
    assert payload["term"] == r"\a:p. a"
    assert payload["details"]["formula"] == "p -> p"


def test_normalize_command(write, capsys, schema):
    path = write("detour.nd", DETOUR_ND)
    assert main(["normalize", path]) == 0
    assert capsys.readouterr().out.strip() == r"\x:p. x"
    code, payload = run_json(capsys, schema, ["normalize", path, "--json"])
    assert code == 0
    assert payload["term"] == r"\x:p. x"
    assert payload["details"]["from"] == r"fst(<\x:p. x, \y:q. y>)"


def test_sense_is_sorted_by_size_then_text(write, capsys):
    path = write("detour.nd", DETOUR_ND)
    assert main(["sense", path]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "x",
        "y",
        r"\x:p. x",
        r"\y:q. y",
        r"<\x:p. x, \y:q. y>",
        r"fst(<\x:p. x, \y:q. y>)",
    ]


def test_sense_multiset_counts(write, capsys, schema):
    path = write("reuse.nd", REUSE_ND)
    assert main(["sense", path, "--multiset"]) == 0
    assert capsys.readouterr().out.splitlines() == ["x  x2", "<x, x>  x1"]
    code, payload = run_json(capsys, schema, ["sense", path, "--multiset", "--json"])
    assert code == 0
    assert payload["details"]["counts"] == [["x", 2], ["<x, x>", 1]]


def test_compare_same_sense_reports_the_renaming(write, capsys, schema):
    a = write("w1.nd", WEAK_1)
    b = write("w2.nd", WEAK_2)
    code, payload = run_json(capsys, schema, ["compare", a, b, "--json"])
    assert code == 0
    assert payload["verdict"] == "SameSenseSameDenotation"
    assert payload["details"]["renaming"] == {"x": "y", "z": "z"}
    assert main(["compare", a, b]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "SameSenseSameDenotation"
    assert any("renaming" in line for line in out)


def test_compare_different_sense_lists_the_difference(write, capsys, schema):
    a = write("id.nd", ID_ND)
    b = write("detour.nd", DETOUR_ND)
    code, payload = run_json(capsys, schema, ["compare", a, b, "--json"])
    assert code == 0
    assert payload["verdict"] == "DifferentSenseSameDenotation"
    assert payload["details"]["only_in_first"] == []
    assert r"\y:q. y" in payload["details"]["only_in_second"]


def test_compare_different_denotation_exits_1(write, capsys, schema):
    a = write("p1.nd", PAIR_1)
    b = write("p2.nd", PAIR_2)
    code, payload = run_json(capsys, schema, ["compare", a, b, "--json"])
    assert code == 1
    assert payload["verdict"] == "DifferentDenotation"
    assert len(payload["details"]["normal_forms"]) == 2


def test_compare_gamma_definitive_answers(write, capsys, schema):
    a = write("a.nd", FST_CASE)
    b = write("b.nd", SND_CASE)
    code, payload = run_json(
        capsys, schema, ["compare", a, b, "--json", "--mode=beta-eta-gamma", "--fuel=4"]
    )
    assert code == 1
    assert payload["verdict"] == "DifferentDenotation"
    assert payload["details"]["fuel"] == 4


def test_compare_inconclusive_exits_3(write, capsys, schema):
    a = write("a.nd", FST_CASE)
    b = write("b.nd", SND_CASE)
    code, payload = run_json(
        capsys, schema, ["compare", a, b, "--json", "--mode=beta-eta-gamma", "--fuel=1"]
    )
    assert code == 3
    assert payload["verdict"] == "SameDenotationUpToGamma"
    assert payload["details"]["inconclusive"] is True
    assert main(["compare", a, b, "--mode=beta-eta-gamma", "--fuel=1"]) == 3
    assert "inconclusive" in capsys.readouterr().out


def test_compare_gamma_success_exits_0(write, capsys, schema, corpus_dir):
    a = str(corpus_dir / "sc_dist_1.sc")
    b = str(corpus_dir / "sc_dist_3.sc")
    code, payload = run_json(capsys, schema, ["compare", a, b, "--json", "--mode=beta-eta-gamma"])
    assert code == 0
    assert payload["verdict"] == "SameDenotationUpToGamma"
    assert payload["details"]["inconclusive"] is False


def test_fuel_comes_from_the_environment(write, capsys, monkeypatch):
    a = write("a.nd", FST_CASE)
    b = write("b.nd", SND_CASE)
    monkeypatch.setenv("PROOFMEAN_FUEL", "1")
    assert main(["compare", a, b, "--mode=beta-eta-gamma"]) == 3
    assert main(["compare", a, b, "--mode=beta-eta-gamma", "--fuel=4"]) == 1
    monkeypatch.setenv("PROOFMEAN_FUEL", "banana")
    assert main(["compare", a, b, "--mode=beta-eta-gamma"]) == 2
    capsys.readouterr()


def test_fuel_must_be_positive(write, capsys):
    a = write("a.nd", FST_CASE)
    b = write("b.nd", SND_CASE)
    assert main(["compare", a, b, "--mode=beta-eta-gamma", "--fuel=0"]) == 2
    assert "fuel" in capsys.readouterr().err


def test_compare_multiset_flag_tightens_sense(write, capsys):
    a = write("r1.nd", REUSE_ND)
    b = write("r2.sc", "(and-r (rf x p) (rf x p))")
    assert main(["compare", a, b]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "SameSenseSameDenotation"
    assert main(["compare", a, b, "--multiset"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "DifferentSenseSameDenotation"


def test_corpus_classifies_every_pair(capsys, schema, corpus_dir):
    code, payload = run_json(capsys, schema, ["corpus", str(corpus_dir), "--json"])
    assert code == 0
    files = payload["details"]["files"]
    assert len(files) == 17
    assert all(f["ok"] for f in files)
    pairs = payload["details"]["pairs"]
    assert len(pairs) == 17 * 16 // 2
    by_key = {(e["first"], e["second"]): e["verdict"] for e in pairs}
    assert by_key[("nd_case_pair", "sc_case_pair")] == "SameSenseSameDenotation"
    assert by_key[("nd_identity", "nd_identity_detour")] == "DifferentSenseSameDenotation"
    assert by_key[("nd_pair_pp_1", "nd_pair_pp_2")] == "DifferentDenotation"


def test_corpus_reports_bad_files(write, tmp_path, capsys, schema):
    write("good.nd", ID_ND)
    write("broken.nd", "(imp-i")
    code, payload = run_json(capsys, schema, ["corpus", str(tmp_path), "--json"])
    assert code == 2
    stages = {f["name"]: f.get("stage") for f in payload["details"]["files"]}
    assert stages["broken"] == "parse"
    assert payload["details"]["files"][1]["ok"] is True


def test_corpus_exit_distinguishes_check_failures(write, tmp_path, capsys):
    write("good.nd", ID_ND)
    write("bad.nd", "(and-e1 (hyp x p))")
    assert main(["corpus", str(tmp_path)]) == 1
    capsys.readouterr()


def test_corpus_inconclusive_exits_3(write, tmp_path, capsys):
    write("a.nd", FST_CASE)
    write("b.nd", SND_CASE)
    assert main(["corpus", str(tmp_path), "--mode=beta-eta-gamma", "--fuel=1"]) == 3
    out = capsys.readouterr().out
    assert "(inconclusive)" in out
