import io
import json

import pytest

from ordconcave import NEG_INF, GroundSet, SetFunction, load_fixture
from ordconcave import choice, verify
from ordconcave.cli import CHECKS, Report, run
from ordconcave.errors import ParseError
from ordconcave.io import FIXTURES, dump_document, fixture_path, parse_document, to_document


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = invoke(*argv)
    return code, json.loads(out)


@pytest.fixture
def modular_file(tmp_path, abc):
    path = tmp_path / "modular.json"
    path.write_text(dump_document(SetFunction.modular(abc, [4, 3, -1])))
    return str(path)


WONLY = str(fixture_path("wconcave_only"))
U1, U2 = str(fixture_path("lex_u1")), str(fixture_path("lex_u2"))


def test_parse_wconcave_only_document():
    u = parse_document(fixture_path("wconcave_only").read_bytes())
    assert u(u.ground.parse("b,c")) == 6


def test_omitted_and_explicit_neg_inf_agree():
    base = {"ground": ["a", "b", "c"], "values": [{"set": [], "value": 0}, {"set": ["a"], "value": 1}]}
    explicit = {**base, "values": base["values"] + [{"set": ["c"], "value": "-inf"}]}
    u, v = parse_document(json.dumps(base)), parse_document(json.dumps(explicit).encode())
    assert u(u.ground.parse("c")) is NEG_INF
    assert u == v


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"ground": ["a"], "values": [{"set": ["z"], "value": 1}]}', "values[0].set[0]"),
        ('{"ground": ["a"], "values": [{"set": ["a"], "value": 1}, {"set": ["a"], "value": 2}]}', "values[1].set"),
        ('{"ground": ["a"], "values": [{"set": ["a"], "value": "-inf"}]}', "values"),
        ('{"ground": ["a"], "values": [{"set": ["a"], "value": "big"}]}', "values[0].value"),
        ('{"ground": ["a"]}', "values"),
        ('{"ground": ["a", "a"], "values": []}', "ground"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert info.value.field == field


def test_syntax_error_names_the_line():
    with pytest.raises(ParseError) as info:
        parse_document('{\n"ground": ["a"],\n"values": [,]\n}')
    assert info.value.line == 3


def test_documents_round_trip():
    for name in FIXTURES:
        u = load_fixture(name)
        assert parse_document(dump_document(u)) == u
        assert parse_document(json.dumps(to_document(u, include_neg_inf=True))) == u


def test_check_ordinal_concavity_wconcave_only():
    code, r = report("check", "ordinal-concavity", WONLY)
    assert code == 1 and r["exit_status"] == 1 and r["holds"] is False
    w = r["witness"]
    assert (w["X"], w["Xprime"], w["x"]) == (["a"], ["b", "c"], "a")


def test_maximize_contract_modular(modular_file):
    code, r = report("maximize", modular_file, "--algorithm", "contract")
    assert code == 0
    assert r["result"] == {"set": ["a", "b"], "value": 7}
    assert r["counters"]["evaluations"] <= 16


def test_compose_query():
    code, r = report("compose", U1, U2, "--query", "c,d")
    assert code == 0
    assert r["result"] == {"value": [8, 5], "split": ["d"]}


def test_compose_out_and_check(tmp_path):
    out = tmp_path / "lex.json"
    code, r = report("compose", U1, U2, "--out", str(out), "--check")
    assert code == 1
    table = json.loads(out.read_text())["values"]
    assert {"set": ["a", "b", "c", "d"], "value": [8, 5], "split": ["c"]} in table
    assert {tuple(r["witness"]["X"]), tuple(r["witness"]["Xprime"])} == {("c", "d"), ("a", "b", "c", "d")}


@pytest.mark.parametrize("prop", sorted(CHECKS))
@pytest.mark.parametrize("name", FIXTURES)
def test_cli_verdicts_match_library(prop, name):
    u = load_fixture(name)
    code, r = report("check", prop, str(fixture_path(name)))
    lib = CHECKS[prop](u, type("Args", (), {"tol": 0.0})())
    assert r["holds"] is lib.holds
    assert code == (0 if lib.holds else 1)
    assert r["counters"]["pairs_checked"] == lib.pairs_checked


def test_golden_wconcave_only_verdicts():
    expected = {
        "ordinal-concavity": 1,
        "ordinal-w-concavity": 0,
        "um": 0,
        "mnat-family": 0,
        "mn-characterization": 0,
        "path-independence": 1,
        "substitutability-1": 1,
        "substitutability-2": 1,
        "sen-alpha": 0,
    }
    for prop, code in expected.items():
        assert invoke("check", prop, WONLY)[0] == code, prop


def test_reports_are_byte_deterministic(tmp_path):
    for argv in (
        ("check", "ordinal-w-concavity", U1),
        ("maximize", WONLY, "--algorithm", "hill", "--mode", "steepest"),
        ("generate", "--kind", "rejection-w-concave", "--n", "3", "--seed", "4"),
        ("compose", U1, U2),
    ):
        first, second = invoke(*argv), invoke(*argv)
        assert first == second
        assert Report.from_json(first[1]).to_json() == first[1]


def test_generate_out_round_trips(tmp_path):
    out = tmp_path / "g.json"
    code, r = report("generate", "--kind", "rejection-concave", "--n", "3", "--seed", "2", "--out", str(out))
    assert code == 0
    u = parse_document(out.read_bytes())
    assert u == verify.generate("rejection-concave", 3, 2)
    assert r["result"] == to_document(u)


def test_other_subcommands():
    assert report("path", WONLY, "--start", "a")[1]["result"]["sets"] == [["a"], ["a", "c"], ["b", "c"]]
    code, r = report("chain", WONLY, "--maximizer", "b,c", "--quantifier", "exists")
    assert code == 0 and r["result"] == {"ordering": ["b", "c"]}
    assert report("choice", WONLY, "--menu", "a,b")[1]["result"]["correspondence"] == [["a"]]
    assert report("interval", WONLY, "--lower", "a", "--upper", "a,b,c")[1]["result"] == {"maximizers": [["a", "c"]]}
    assert report("preimage", WONLY, "--choice-set", "a")[1]["result"]["menus"] == [["a"], ["a", "b"]]
    assert report("enclosure", WONLY, "--choice-set", "a")[1]["result"] == {"lower": ["a"], "upper": ["a", "b"]}
    assert invoke("proper", WONLY, "--set", "a,c")[0] == 0
    code, r = report("proper", WONLY, "--set", "a")
    assert code == 1 and r["witness"]["x"] == "b"
    dual = report("dual", WONLY)[1]["result"]
    assert {"set": ["a"], "value": 6} in dual["values"]
    assert {"set": ["a"], "value": -6} in report("dual", WONLY, "--convex")[1]["result"]["values"]
    minor = report("minor", WONLY, "--reduce-to", "a,b,c", "--contract", "a")[1]["result"]
    assert minor == {"ground": ["b", "c"], "values": [{"set": [], "value": 0}, {"set": ["b"], "value": -2},
                                                      {"set": ["c"], "value": 1}, {"set": ["b", "c"], "value": -4}]}


def test_text_format():
    code, out, _ = invoke("check", "ordinal-concavity", WONLY, "--format", "text")
    assert code == 1
    assert "holds: no" in out and 'witness.x: "a"' in out


def test_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ground": ["a"], "values": [{"set": ["q"], "value": 1}]}')
    code, out, err = invoke("check", "um", str(bad))
    assert code == 2 and out == "" and "values[0].set[0]" in err
    assert invoke("check", "um", str(tmp_path / "missing.json"))[0] == 2
    assert invoke("check", "no-such-property", WONLY)[0] == 2
    assert invoke("enclosure", WONLY, "--choice-set", "a,b")[0] == 2
    assert invoke("chain", WONLY, "--maximizer", "a")[0] == 2
    assert invoke("maximize", WONLY, "--start", "z", "--algorithm", "hill")[0] == 2
    assert invoke()[0] == 2


def test_main_entry_point_is_installed():
    import shutil
    import subprocess

    exe = shutil.which("ordconcave")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "check", "ordinal-w-concavity", WONLY], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["holds"] is True


def test_ground_check_for_labels():
    g = GroundSet(["x", "y"])
    assert to_document(SetFunction.constant(g))["ground"] == ["x", "y"]
    assert choice.canonical_choice(SetFunction.constant(g), g.full).labels == ()
