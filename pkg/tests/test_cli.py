"""CLI surface: exit codes, JSON schema, determinism, export formats."""

import json

import pytest

from noncomm import __version__
from noncomm.cli import main, resolve_group
from noncomm.matgroups import sl2
from noncomm.ncgraph import build_graph


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


# -- group spec resolution -------------------------------------------------------


def test_resolve_family_spec():
    assert resolve_group("sl2:5") is sl2(5)


def test_resolve_descriptor_spec():
    assert resolve_group("D24").order == 24


def test_resolve_bad_spec():
    with pytest.raises(ValueError, match="cannot parse"):
        resolve_group("widget")


# -- exit codes ------------------------------------------------------------------


def test_verify_sl_q2_passes(capsys):
    code, blob, _ = run_json(capsys, ["verify", "sl", "--q", "2"])
    assert code == 0
    assert blob["verdict"] is True


def test_verify_gl_q3_is_usage_error(capsys):
    code, out, err = run(capsys, ["verify", "gl", "--q", "3"])
    assert code == 2
    assert out == ""
    assert "q must be one of" in err


def test_verify_sl_q6_is_usage_error(capsys):
    code, _, err = run(capsys, ["verify", "sl", "--q", "6"])
    assert code == 2


def test_classify_non_ac_fails(capsys):
    code, blob, _ = run_json(capsys, ["classify", "--group", "S4"])
    assert code == 1
    assert blob["verdict"] is False
    assert blob["data"]["ac"]["witness"]["centralizer_order"] == 8


def test_unknown_subcommand(capsys):
    assert run(capsys, ["frobnicate"])[0] == 2


def test_conflicting_group_flags(capsys):
    code, _, err = run(capsys, ["group", "build", "--sl2", "3", "--gl2", "4"])
    assert code == 2
    assert "exactly one" in err


def test_missing_group_flags(capsys):
    assert run(capsys, ["group", "build"])[0] == 2


def test_bad_descriptor_is_usage_error(capsys):
    code, _, err = run(capsys, ["classify", "--group", "notagroup"])
    assert code == 2
    assert "cannot parse" in err


def test_clique_budget_exhaustion_fails(capsys):
    code, blob, _ = run_json(
        capsys, ["graph", "clique", "--sl2", "5", "--budget", "0"]
    )
    assert code == 1
    assert blob["verdict"] is False
    assert blob["data"]["complete"] is False
    assert blob["data"]["best_size"] >= 1


def test_field_cap_and_bad_q(capsys):
    assert run(capsys, ["field", "--q", "83"])[0] == 2  # above CLI cap
    assert run(capsys, ["field", "--q", "6"])[0] == 2  # not a prime power


# -- report schema ----------------------------------------------------------------


def test_report_schema_keys(capsys):
    code, blob, _ = run_json(capsys, ["verify", "sl", "--q", "3"])
    assert code == 0
    assert set(blob) == {"tool", "version", "config", "verdict", "assertions", "data"}
    assert blob["tool"] == "noncomm"
    assert blob["version"] == __version__
    for entry in blob["assertions"]:
        assert set(entry) == {"name", "expected", "computed", "pass"}
        assert entry["pass"] is True
    assert blob["config"]["command"] == "verify sl"
    assert blob["config"]["q"] == 3


def test_clique_report_content(capsys):
    code, blob, _ = run_json(
        capsys, ["graph", "clique", "--spec", "S3", "--budget", "60"]
    )
    assert code == 0
    assert blob["data"]["omega"] == 4
    assert len(blob["data"]["witness"]) == 4
    assert blob["config"]["budget"] == 60.0


def test_group_build_report(capsys):
    code, blob, _ = run_json(capsys, ["group", "build", "--sl2", "4"])
    assert code == 0
    d = blob["data"]
    assert d["order"] == 60 and d["center_order"] == 1
    assert d["element_order_histogram"]["2"] == 15
    assert d["meta"]["kind"] == "sl2"


def test_group_partition_report(capsys):
    code, blob, _ = run_json(capsys, ["group", "partition", "--pgl2", "5"])
    assert code == 0
    d = blob["data"]
    assert (d["sylow_count"], d["split_tori_count"], d["nonsplit_tori_count"]) == (
        6,
        15,
        10,
    )


def test_graph_profile_report(capsys):
    code, blob, _ = run_json(capsys, ["graph", "profile", "--sl2", "5"])
    assert code == 0
    prof = blob["data"]["profile"]
    assert set(map(int, prof["W"])) == {4, 6, 10}
    assert blob["data"]["n_vertices"] == 118


def test_rivals_report(capsys):
    code, blob, _ = run_json(capsys, ["rivals", "--order", "24", "--target", "sl2:3"])
    assert code == 0
    assert blob["data"]["matches"] == ["SL(2,3)"]
    assert len(blob["data"]["entries"]) == 15


def test_rivals_tied_targets_still_pass(capsys):
    code, blob, _ = run_json(capsys, ["rivals", "--order", "24", "--target", "D24"])
    assert code == 0
    assert len(blob["data"]["matches"]) == 3


def test_rivals_usage_errors(capsys):
    assert run(capsys, ["rivals", "--order", "12", "--target", "D12"])[0] == 2
    code, _, err = run(capsys, ["rivals", "--order", "6", "--target", "D24"])
    assert code == 2 and "order" in err


def test_classify_sl23_report(capsys):
    code, blob, _ = run_json(capsys, ["classify", "--group", "sl2:3"])
    assert code == 0
    assert blob["data"]["case"] == "S3"
    assert blob["data"]["omega"] == 7


def test_classify_nonsolvable_route(capsys):
    code, blob, _ = run_json(capsys, ["classify", "--group", "sl2:5"])
    assert code == 0
    assert blob["data"]["case"] == "NS1"


# -- compare and export -----------------------------------------------------------


def test_compare_isomorphic_graphs(capsys):
    code, blob, _ = run_json(capsys, ["graph", "compare", "D24", "Dic24"])
    assert code == 0
    assert blob["data"]["isomorphic"] is True


def test_compare_different_graphs(capsys):
    code, blob, _ = run_json(capsys, ["graph", "compare", "sl2:3", "C2xA4"])
    assert code == 1
    assert blob["data"]["fingerprints_match"] is False


def test_export_dimacs_stdout_and_file(capsys, tmp_path):
    path = tmp_path / "s3.dimacs"
    code, out, _ = run(
        capsys,
        ["graph", "export", "--spec", "S3", "--format", "dimacs", "--output", str(path)],
    )
    assert code == 0
    assert out.startswith("p edge 5 9")
    assert path.read_text() == out
    assert out == build_graph(resolve_group("S3")).to_dimacs()


def test_export_json(capsys):
    code, blob, _ = run_json(capsys, ["graph", "export", "--spec", "D8"])
    assert code == 0
    assert blob["data"]["n_vertices"] == 6
    assert len(blob["data"]["edges"]) == 12


# -- output handling ---------------------------------------------------------------


def test_output_file_matches_stdout(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, ["--output", str(path), "verify", "sl", "--q", "2"]
    )
    assert code == 0
    assert path.read_text() == out


def test_text_format(capsys):
    code, out, _ = run(capsys, ["--format", "text", "verify", "sl", "--q", "2"])
    assert code == 0
    assert "verdict = true" in out
    assert "config.command = \"verify sl\"" in out


def test_byte_identical_reruns(capsys):
    first = run(capsys, ["verify", "sl", "--q", "3"])[1]
    second = run(capsys, ["verify", "sl", "--q", "3"])[1]
    assert first == second
    third = run(capsys, ["classify", "--group", "D24"])[1]
    fourth = run(capsys, ["classify", "--group", "D24"])[1]
    assert third == fourth


def test_json_is_sorted_and_timestamp_free(capsys):
    _, out, _ = run(capsys, ["group", "build", "--spec", "D8"])
    blob = json.loads(out)
    assert out == json.dumps(blob, indent=2, sort_keys=True) + "\n"
    assert "time" not in out and "thread" not in out
