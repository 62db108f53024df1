import json
import subprocess
import sys

import pytest

from varitas import builtin_variety, corpus_group, is_csx, is_xt, parse_word
from varitas.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, "--output", "json", *argv)
    return code, (json.loads(out) if out else None), err


class TestCheck:
    def test_csx_s3_abelian(self, capsys):
        code, data, _ = run_json(
            capsys, "check", "csx", "--group", "builtin:S3",
            "--variety", "builtin:abelian",
        )
        assert code == 0
        entry = data[0]
        assert entry["verdict"] is False
        assert entry["witness"]["subgroup"] == ["()", "(1 2 3)", "(1 3 2)"]

    def test_member(self, capsys):
        code, data, _ = run_json(
            capsys, "check", "member", "--group", "builtin:S4",
            "--variety", "builtin:metabelian",
        )
        assert code == 0
        assert data[0]["verdict"] is False
        assert data[0]["witness"]["law"] == parse_word("[[x1,x2],[x3,x4]]").text()

    def test_xt_both_methods(self, capsys):
        code, data, _ = run_json(
            capsys, "check", "xt", "--group", "builtin:S4",
            "--variety", "builtin:abelian", "--method", "both",
        )
        assert code == 0
        assert [e["method"] for e in data] == ["direct", "centralizer"]
        assert all(e["verdict"] is False for e in data)

    def test_domain(self, capsys):
        code, data, _ = run_json(
            capsys, "check", "domain", "--group", "builtin:A5",
            "--method", "both",
        )
        assert code == 0
        assert all(e["verdict"] for e in data)

    def test_cli_matches_library(self, capsys):
        # the CLI is a thin adapter: verdicts must coincide with the API
        for kind, fn in (("xt", is_xt), ("csx", is_csx)):
            for gname in ("S3", "S4", "Q8"):
                for vname in ("abelian", "metabelian"):
                    code, data, _ = run_json(
                        capsys, "check", kind,
                        "--group", f"builtin:{gname}",
                        "--variety", f"builtin:{vname}",
                    )
                    assert code == 0
                    expected = fn(
                        corpus_group(gname), builtin_variety(vname)
                    ).verdict
                    assert data[0]["verdict"] == expected


class TestOtherCommands:
    def test_centralizer_classic(self, capsys):
        code, data, _ = run_json(
            capsys, "centralizer", "--group", "builtin:S3",
            "--element", "(1 2 3)",
        )
        assert code == 0
        assert data[0]["stats"]["members"] == ["()", "(1 2 3)", "(1 3 2)"]

    def test_centralizer_with_variety(self, capsys):
        code, data, _ = run_json(
            capsys, "centralizer", "--group", "builtin:S4",
            "--element", "(2 3)", "--x", "builtin:metabelian",
        )
        assert code == 0
        assert data[0]["stats"]["closed"] is False

    def test_subgroups_maximal(self, capsys):
        code, data, _ = run_json(
            capsys, "subgroups", "--group", "builtin:S3", "--maximal",
            "--variety", "builtin:abelian",
        )
        assert code == 0
        assert len(data) == 4

    def test_marginal_verbal(self, capsys):
        code, data, _ = run_json(
            capsys, "marginal", "--group", "builtin:Q8", "--word", "[x1,x2]",
        )
        assert code == 0
        assert data[0]["stats"]["members"] == ["1", "-1"]
        code, data, _ = run_json(
            capsys, "verbal", "--group", "builtin:Q8", "--word", "x1^2",
        )
        assert code == 0
        assert data[0]["stats"]["members"] == ["1", "-1"]

    def test_sentences(self, capsys):
        code, data, _ = run_json(
            capsys, "sentences", "--group", "builtin:S3",
            "--variety", "builtin:abelian", "--nmax", "2",
        )
        assert code == 0
        stats = data[0]["stats"]
        assert stats["sub_x"] and not stats["mal_x"]
        assert stats["xn"] == {"1": True, "2": True}

    def test_partition_count(self, capsys):
        code, data, _ = run_json(
            capsys, "partition-count", "--group", "builtin:frobenius21",
            "--rep", "(1 2 3 4 5 6 7)", "--rep", "(1 2 4)(3 6 5)",
        )
        assert code == 0
        stats = data[0]["stats"]
        assert stats["term_sum"] == 20 and stats["count_identity_ok"]

    def test_amalgam_commands(self, capsys):
        code, data, _ = run_json(
            capsys, "amalgam", "check-malnormal", "--construction", "d2p3",
            "--len", "3",
        )
        assert code == 0 and data[0]["verdict"] is True
        code, data, _ = run_json(
            capsys, "amalgam", "not-xt-witness", "--construction", "d2p3",
            "--depth", "2",
        )
        assert code == 0 and data[0]["verdict"] is True
        assert data[0]["stats"]["factor_a_in_x"] is True

    def test_probe(self, capsys):
        code, data, _ = run_json(
            capsys, "probe", "free", "--construction", "c3xc3",
            "--w1", "a2 b2 a1 b1", "--w2", "a1 b2 a2 b1", "--len", "6",
        )
        assert code == 0 and data[0]["verdict"] is True


class TestFilesAndErrors:
    def test_group_file(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(
            json.dumps(
                {"name": "myS3", "kind": "permutations",
                 "generators": ["(1 2)", "(1 2 3)"]}
            )
        )
        code, data, _ = run_json(
            capsys, "check", "member", "--group", str(path),
            "--variety", "builtin:abelian",
        )
        assert code == 0
        assert data[0]["group"] == "myS3"
        assert data[0]["verdict"] is False

    def test_construction_file(self, capsys, tmp_path):
        path = tmp_path / "k.json"
        path.write_text(
            json.dumps(
                {
                    "kind": "amalgam",
                    "A": {"name": "D6", "kind": "builtin",
                          "builtin": {"family": "dihedral", "param": 6}},
                    "B": {"name": "D6", "kind": "builtin",
                          "builtin": {"family": "dihedral", "param": 6}},
                    "pairing": [[0, 0], [3, 3]],
                }
            )
        )
        code, data, _ = run_json(
            capsys, "amalgam", "check-malnormal", "--construction", str(path),
            "--len", "2",
        )
        assert code == 0

    def test_malformed_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{broken")
        code, _, err = run_cli(
            capsys, "check", "member", "--group", str(path),
            "--variety", "builtin:abelian",
        )
        assert code == 2
        assert "line" in err

    def test_budget_exit_2(self, capsys, monkeypatch):
        monkeypatch.setenv("VARITAS_CAP_BUDGET", "10")
        code, _, err = run_cli(
            capsys, "check", "member", "--group", "builtin:A5",
            "--variety", "builtin:metabelian",
        )
        assert code == 2
        assert "budget" in err

    def test_cap_budget_flag(self, capsys):
        code, _, err = run_cli(
            capsys, "check", "member", "--group", "builtin:A4",
            "--variety", "builtin:metabelian", "--cap-budget", "10",
        )
        assert code == 2

    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


class TestDeterminism:
    def test_suite_bytes_identical_across_jobs(self, capsys):
        names = [
            "group-core/orbit-stabilizer",
            "words/roundtrip-1000",
            "properties/s4-metabelian-example",
            "freeprod/amalgam-coherence",
        ]
        outs = []
        for jobs in ("1", "3"):
            argv = ["--output", "json", "--jobs", jobs, "suite"]
            for n in names:
                argv += ["--only", n]
            code, out, _ = run_cli(capsys, *argv)
            assert code == 0
            outs.append(out.encode())
        assert outs[0] == outs[1]

    def test_check_bytes_identical_across_runs(self, capsys):
        argv = [
            "--output", "json", "check", "csx", "--group", "builtin:S4",
            "--variety", "builtin:abelian", "--method", "both",
        ]
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        assert out1.encode() == out2.encode()


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "varitas.cli", "--output", "json",
         "check", "member", "--group", "builtin:C6",
         "--variety", "builtin:abelian"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["verdict"] is True
