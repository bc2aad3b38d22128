"""CLI surface: subcommands, formats, exit codes, atomic output."""

import json

import pytest

from abacbench.cli import main
from abacbench.datasets import dataset_text


@pytest.fixture()
def uni_file(tmp_path):
    path = tmp_path / "university.abac"
    path.write_text(dataset_text("university"))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_stats_json(capsys, uni_file):
    code, out, _ = run(capsys, "stats", uni_file, "--format", "json")
    assert code == 0
    assert json.loads(out) == {"sub": 22, "res": 34, "uAttr": 6, "rAttr": 5, "rule": 10, "perm": 168}


def test_stats_csv_and_table(capsys, uni_file):
    code, out, _ = run(capsys, "stats", uni_file, "--format", "csv")
    assert code == 0 and out.splitlines()[1] == "22,34,6,5,10,168"
    code, out, _ = run(capsys, "stats", uni_file)
    assert code == 0 and "perm" in out


def test_stats_accepts_bundled_name(capsys):
    code, out, _ = run(capsys, "stats", "healthcare", "--format", "json")
    assert code == 0 and json.loads(out)["perm"] == 43


def test_eval_full_triple(capsys, uni_file):
    code, out, _ = run(
        capsys, "eval", uni_file, "--user", "stu1", "--res", "stu1-transcript",
        "--act", "readTranscript", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"permitted": True, "matchingRules": [5]}


def test_eval_query_empty_rule_policy(capsys, tmp_path):
    path = tmp_path / "empty.abac"
    path.write_text("userAttrib(u1)\nresourceAttrib(r1)\n")
    code, out, _ = run(capsys, "eval", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out) == {"permissions": [], "total": 0}


def test_eval_resource_filter(capsys, uni_file):
    code, out, _ = run(capsys, "eval", uni_file, "--res", "cs101-gradebook", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["total"] == len(payload["permissions"]) > 0
    assert all(p["resource"] == "cs101-gradebook" for p in payload["permissions"])


def test_eval_unknown_user_exits_2(capsys, uni_file):
    code, _, err = run(capsys, "eval", uni_file, "--user", "ghost", "--format", "json")
    assert code == 2 and "unknown user" in err


def test_check_roundtrip(capsys, uni_file, tmp_path):
    requests = tmp_path / "reqs.csv"
    requests.write_text("user,resource,action\nstu1,stu1-transcript,readTranscript\n")
    out_file = tmp_path / "results.csv"
    code, _, _ = run(capsys, "check", uni_file, str(requests), "-o", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[1] == "stu1,stu1-transcript,readTranscript,permit,5"


def test_coverage_csv(capsys, uni_file):
    code, out, _ = run(capsys, "coverage", uni_file, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "rule_index,count"
    assert len(out.splitlines()) == 11


def test_coverage_external_rules(capsys, uni_file, tmp_path):
    rules = tmp_path / "extra.rules"
    rules.write_text("rule(; ; {readMyScores}; )\n")
    code, out, _ = run(capsys, "coverage", uni_file, "--rules", str(rules), "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"rule": 1, "count": 22 * 34}]


def test_heatmap_csv(capsys, uni_file):
    code, out, _ = run(capsys, "heatmap", uni_file, "--format", "csv")
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header[0] == "rule" and len(header) == 1 + 6 + 5


def test_resource_access_json(capsys, uni_file):
    code, out, _ = run(capsys, "resource-access", uni_file, "--format", "json")
    payload = json.loads(out)
    assert code == 0 and len(payload["top"]) == 10 and len(payload["bottom"]) == 10


def test_loggen_deterministic_files(capsys, uni_file, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["loggen", uni_file, "-n", "100", "--permit-ratio", "0.6", "--over", "0.1",
            "--under", "0.05", "--seed", "9"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "user,resource,action,decision"
    assert sum(1 for line in lines[1:] if line.endswith(",permit")) == 60


def test_loggen_truth_sidecar(capsys, uni_file, tmp_path):
    out_file = tmp_path / "logs.csv"
    code, _, _ = run(
        capsys, "loggen", uni_file, "-n", "10", "--permit-ratio", "0.5",
        "--seed", "3", "-o", str(out_file), "--emit-truth",
    )
    assert code == 0
    sidecar = tmp_path / "logs.truth.csv"
    assert sidecar.read_text().splitlines()[0] == "user,resource,action,decision,ground_truth"


def test_loggen_truth_requires_output(capsys, uni_file):
    code, _, err = run(capsys, "loggen", uni_file, "-n", "5", "--permit-ratio", "1",
                       "--emit-truth")
    assert code == 1 and "requires" in err


def test_loggen_bad_ratio_is_usage_error(capsys, uni_file):
    code, _, _ = run(capsys, "loggen", uni_file, "-n", "5", "--permit-ratio", "2")
    assert code == 1


def test_loggen_pool_error_exits_2(capsys, tmp_path):
    path = tmp_path / "allperm.abac"
    path.write_text("userAttrib(u1)\nresourceAttrib(r1)\nrule(; ; {go}; )\n")
    code, _, err = run(capsys, "loggen", str(path), "-n", "4", "--permit-ratio", "0.5")
    assert code == 2 and "denies nothing" in err


def test_convert_csv_writes_three_files(capsys, uni_file, tmp_path):
    out = tmp_path / "export"
    code, _, _ = run(capsys, "convert", uni_file, "--to", "csv", "-o", str(out))
    assert code == 0
    assert (out / "users.csv").read_text().splitlines()[0].startswith("id,")
    assert len((out / "users.csv").read_text().splitlines()) == 23
    assert (out / "resources.csv").exists()
    assert len((out / "rules.abac").read_text().splitlines()) == 10


def test_convert_canonical_roundtrip(capsys, uni_file, tmp_path):
    out = tmp_path / "uni.json"
    code, _, _ = run(capsys, "convert", uni_file, "--to", "canonical", "-o", str(out))
    assert code == 0
    from abacbench import import_canonical, statistics

    p = import_canonical(out.read_bytes())
    assert statistics(p).n_perm == 168


def test_gen_workforce_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.abac", tmp_path / "b.abac"
    assert main(["gen", "workforce", "--seed", "5", "-o", str(a)]) == 0
    assert main(["gen", "workforce", "--seed", "5", "-o", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_gen_with_config_file(capsys, tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("seed=9\nnEmployees=10\nnCustomers=5\nnAdmins=1\n"
                   "nInvoices=4\nnBankingNotes=3\nnPaychecks=2\nnTenants=2\n")
    out = tmp_path / "tiny.abac"
    code, _, _ = run(capsys, "gen", "edocument", "--config", str(cfg), "-o", str(out))
    assert code == 0
    from abacbench import parse_policy

    p = parse_policy(out.read_text(), "tiny")
    assert len(p.users) == 16 and len(p.resources) == 9


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "stats", "/nonexistent/file.abac")
    assert code == 2 and "no such file" in err


def test_unknown_subcommand_exits_1(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_no_args_exits_1(capsys):
    assert main([]) == 1
    capsys.readouterr()


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.abac"
    bad.write_text("rule(oops; ; {x}; )")
    code, _, err = run(capsys, "stats", str(bad))
    assert code == 2 and "line 1" in err
