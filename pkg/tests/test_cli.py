"""
End-to-end tests of the command-line interface through main(argv)
"""
import json
from pathlib import Path

import pytest

from cli import RunConfig, build_parser, main
from config.settings import CERTS_PATH, GRAPHS_PATH, HOMS_PATH

GOLDEN = Path(__file__).parent / "golden"


def graph_file(name):
    return str(GRAPHS_PATH / f"{name}.graph")


def hom_file(name):
    return str(HOMS_PATH / name)


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


@pytest.fixture(autouse=True)
def no_color(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_golden(capsys):
    code, out, _ = run(capsys, "eval", graph_file("rose2"), "-e", "v - e e* - f f*")
    assert code == 0
    assert out == golden("eval_ck2.txt")


def test_eval_terms_and_degree(capsys):
    code, out, _ = run(capsys, "eval", graph_file("rose2"), "-e", "e e*", "--normalize", "--degree")
    assert code == 0
    assert out.splitlines() == ["value: v - f f*", "terms: 1 v, -1 f f*", "degree: 0"]


def test_info_golden(capsys):
    code, out, _ = run(capsys, "info", graph_file("rose2"))
    assert code == 0
    assert out.startswith(golden("info_rose2.txt"))
    assert "adjacency:" in out


def test_info_of_graph_with_sink(capsys):
    code, out, _ = run(capsys, "info", graph_file("toeplitz"))
    assert code == 0
    assert "sinks: w" in out
    assert "regular: False" in out
    assert "primitive: False" in out


def test_info_reports_essential_reduction(capsys):
    code, out, _ = run(capsys, "info", graph_file("source"))
    assert code == 0
    assert "essential reduction:" in out
    assert "(eliminated s)" in out


def test_bf_golden(capsys):
    code, out, _ = run(capsys, "bf", graph_file("rose2"))
    assert code == 0
    assert out == golden("bf_rose2.txt")


def test_bf_ungraded(capsys):
    code, out, _ = run(capsys, "bf", graph_file("rose3"), "--ungraded")
    assert code == 0
    assert "group: Z/2" in out


def test_iso_golden_and_output_file(capsys, tmp_path):
    target = tmp_path / "found.cert"
    code, out, _ = run(capsys, "iso", graph_file("rose2"), graph_file("j2"), "--lag-max", "2", "--entry-max", "2",
                       "-o", str(target))
    assert code == 0
    assert out == golden("iso_rose2_j2.txt")
    code, out, _ = run(capsys, "verify-iso", graph_file("rose2"), graph_file("j2"), str(target))
    assert code == 0
    assert out.splitlines()[-1] == "status: PASS"


def test_iso_not_found_is_undecided(capsys):
    code, out, _ = run(capsys, "iso", graph_file("rose2"), graph_file("rose3"), "--entry-max", "2",
                       "--lag-max", "2")
    assert code == 3
    assert out == golden("iso_rose2_rose3.txt")


def test_iso_with_a_forward_lag(capsys):
    code, out, _ = run(capsys, "iso", graph_file("j2"), graph_file("rose2"), "--lag-max", "2", "--entry-max", "2")
    assert code == 0
    assert out == golden("iso_j2_rose2.txt")


def test_verify_bad_certificate(capsys):
    code, out, _ = run(capsys, "verify-iso", graph_file("rose2"), graph_file("j2"),
                       str(CERTS_PATH / "rose2_j2_bad.cert"))
    assert code == 1
    assert "  intertwines-forward: FAIL: A_F^t M != M A_E^t" in out


def test_check_hom_golden(capsys):
    code, out, _ = run(capsys, "check-hom", graph_file("rose2"), graph_file("j2"), hom_file("rose2_to_j2.hom"))
    assert code == 0
    assert out == golden("check_hom_rose2_j2.txt")


def test_check_hom_failure_exits_1(capsys):
    code, out, _ = run(capsys, "check-hom", graph_file("rose2"), graph_file("rose2"), hom_file("rose2_broken.hom"))
    assert code == 1
    assert out == golden("check_hom_broken.txt")


def test_deform_golden(capsys):
    code, out, _ = run(capsys, "deform", graph_file("rose2"), graph_file("rose2"), hom_file("rose2_identity.hom"),
                       hom_file("rose2_scale.units"))
    assert code == 0
    assert out == golden("deform_rose2_scale.txt")


def test_deform_of_broken_hom_exits_1(capsys):
    code, out, _ = run(capsys, "deform", graph_file("rose2"), graph_file("rose2"), hom_file("rose2_broken.hom"),
                       hom_file("rose2_scale.units"))
    assert code == 1
    assert "deformed images:" not in out
    assert out.splitlines()[-1] == "status: FAIL"


def test_k_theory_commands(capsys):
    code, out, _ = run(capsys, "k0", graph_file("rose2"), "-e", "e e*")
    assert code == 0
    assert "class: (1) @ 1" in out
    code, out, _ = run(capsys, "k1", graph_file("rose2"), "-e", "1", "--field", "fp:2")
    assert code == 0
    assert "class: 1 (trivial group)" in out
    code, _, err = run(capsys, "k1", graph_file("rose2"), "-e", "e e*")
    assert code == 1
    assert err.startswith("error[")


def test_full_cert(capsys):
    code, out, _ = run(capsys, "full-cert", graph_file("fibonacci"), "--edge", "b")
    assert code == 0
    assert "verified: True" in out


def test_check_homotopy_golden(capsys):
    deform, end = hom_file("rose2_deform.homotopy"), hom_file("rose2_deform_end.homotopy")
    code, out, _ = run(capsys, "check-homotopy", graph_file("rose2"), graph_file("rose2"), deform, end)
    assert code == 0
    assert out == golden("homotopy_chain_rose2.txt")


def test_reversed_homotopy_chain_exits_1(capsys):
    deform, end = hom_file("rose2_deform.homotopy"), hom_file("rose2_deform_end.homotopy")
    code, out, _ = run(capsys, "check-homotopy", graph_file("rose2"), graph_file("rose2"), end, deform)
    assert code == 1
    expected = golden("homotopy_chain_rose2.txt").splitlines()[:-2]
    assert out.splitlines() == expected + [
        "  chain 0-1: FAIL: ev1 of link 0 differs from ev0 of link 1 on 'e'",
        "status: FAIL",
    ]


def test_rotate_golden(capsys):
    code, out, _ = run(capsys, "rotate", graph_file("rose2"), graph_file("rose2"), hom_file("rose2_identity.hom"),
                       "-u", "2 e e* + f f*")
    assert code == 0
    report = golden("rotate_rose2_report.txt")
    assert out.startswith(report)
    images = out[len(report):].splitlines()
    assert [line.split(" -> ")[0] for line in images] == ["  v", "  e", "  f", "  e*", "  f*"]


def test_rotate_needs_a_unit(capsys):
    code, out, err = run(capsys, "rotate", graph_file("rose2"), graph_file("rose2"), hom_file("rose2_identity.hom"),
                         "-u", "e e*")
    assert code == 1
    assert out == ""
    assert err.startswith("error[")


@pytest.mark.parametrize("argv, code_fragment", [
    (["eval", "rose2", "-e", "e"], "E-FILE-FORMAT"),
    (["eval", "GRAPH", "-e", "e +"], "E-SYNTAX"),
    (["eval", "GRAPH", "-e", "g"], "E-UNKNOWN-GENERATOR"),
    (["eval", "GRAPH", "-e", "e", "--field", "fp:4"], "E-INVALID-FIELD"),
    (["iso", "GRAPH", "GRAPH", "--lag-max", "-1"], "E-INVALID-BOUNDS"),
])
def test_usage_errors_exit_2(capsys, argv, code_fragment):
    argv = [graph_file("rose2") if a == "GRAPH" else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error[")
    assert code_fragment in err


def test_argparse_exit_codes(capsys):
    assert main([]) == 2
    assert main(["--help"]) == 0
    assert main(["info"]) == 2
    capsys.readouterr()


def test_json_lines_are_stable(capsys):
    argv = ["check-hom", graph_file("rose2"), graph_file("j2"), hom_file("rose2_to_j2.hom"), "--format", "json-lines"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    records = [json.loads(line) for line in first[1].splitlines()]
    assert records[0]['kind'] == 'check'
    assert any(r['kind'] == 'summary' and r['status'] == 'pass' for r in records)
    assert records[-1] == {'kind': 'k0-map', 'lag': 0, 'M': "[[1], [1]]"}


def test_run_config_levels():
    args = build_parser().parse_args(["info", "x.graph", "-vv"])
    config = RunConfig.from_args(args)
    assert config.paths == ["x.graph"]
    assert config.log_level == 10
