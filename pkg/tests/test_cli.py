"""CLI behavior: parsing, exit codes, formats, determinism."""

import json

import pytest

from wlab.cli import main, parse_index_expr
from wlab.errors import WlabError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestIndexExpr:
    def test_forms(self):
        assert parse_index_expr("13308", 11) == 13308
        assert parse_index_expr("p-3", 13) == 10
        assert parse_index_expr("p-5", 13) == 8
        assert parse_index_expr("p^2-p-4", 13) == 152
        assert parse_index_expr("p^4-p^3-2", 11) == 13308
        assert parse_index_expr("p^4-p^3-4", 11) == 13306
        assert parse_index_expr("p^3 - p^2 - 2", 11) == 1208

    def test_garbage_rejected(self):
        for bad in ("p**3", "3p", "q-3", "p^", ""):
            with pytest.raises(WlabError):
                parse_index_expr(bad, 11)


class TestVerify:
    def test_range_passes(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--p", "11..200", "--check", "thm1.1")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert all(row["holds"] for row in rows)
        assert [row["p"] for row in rows] == sorted(row["p"] for row in rows)

    def test_p7_exp7_violation(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--p", "7", "--check", "thm1.1", "--exp", "7")
        assert code == 2
        (row,) = [json.loads(line) for line in out.splitlines()]
        assert row["residual_valuation"] == 6 and row["status"] == "fail"

    def test_p7_exp6_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--p", "7", "--check", "thm1.1", "--exp", "6")
        assert code == 0

    def test_non_prime_rejected(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--p", "12", "--check", "thm1.1")
        assert code == 1
        assert "not a prime" in err

    def test_unknown_check(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--p", "11", "--check", "bogus")
        assert code == 1 and "unknown check" in err

    def test_exp_requires_thm(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--p", "11", "--check", "eq1.1", "--exp", "4")
        assert code == 1

    def test_identity_reports_do_not_fail(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--p", "3..7", "--check", "thm1.1")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["status"] for r in rows] == ["identity", "identity", "n/a"]

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--p", "11", "--check", "eq1.1", "--format", "csv")
        assert code == 0
        header, row = out.splitlines()
        assert header.startswith("check,p,required_exp")
        assert row.startswith("eq1.1,11,3,")

    def test_human_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--p", "11", "--check", "eq1.1", "--format", "human")
        assert code == 0 and "eq1.1" in out and "pass" in out

    def test_worker_count_does_not_change_stream(self, capsys):
        streams = []
        for w in ("1", "4"):
            code, out, _ = run_cli(capsys, "verify", "--p", "11..100", "--check", "cor1.5",
                                   "--workers", w)
            assert code == 0
            streams.append(out)
        assert streams[0] == streams[1]

    def test_list_checks(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--p", "11", "--list-checks")
        assert code == 0
        assert "thm1.1" in out.split()


class TestSearchCommand:
    def test_empty_range(self, capsys):
        code, out, err = run_cli(capsys, "search", "wolstenholme", "--max", "100")
        assert code == 0 and out == ""

    def test_hit_window(self, capsys):
        code, out, _ = run_cli(capsys, "search", "wolstenholme", "--min", "16800", "--max", "16900")
        assert code == 0
        (row,) = [json.loads(line) for line in out.splitlines()]
        assert row["p"] == 16843 and row["kind"] == "wolstenholme"

    def test_mod_p8_empty(self, capsys):
        code, out, _ = run_cli(capsys, "search", "mod-p8", "--max", "500")
        assert code == 0 and out == ""

    def test_resume_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "search", "wolstenholme", "--max", "100",
                               "--resume", "missing.json")
        assert code == 1 and "missing.json" in err

    def test_max_required(self, capsys):
        code, _, err = run_cli(capsys, "search", "wolstenholme")
        assert code == 1

    def test_checkpoint_flag(self, capsys, tmp_path):
        ck = str(tmp_path / "ck.json")
        code, out, _ = run_cli(capsys, "search", "wolstenholme", "--max", "300",
                               "--checkpoint", ck)
        assert code == 0
        data = json.loads(open(ck).read())
        assert data["last_completed_prime"] == 300

    def test_env_checkpoint_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("WLAB_CHECKPOINT_DIR", str(tmp_path))
        code, _, _ = run_cli(capsys, "search", "wolstenholme", "--max", "200")
        assert code == 0
        assert (tmp_path / "wolstenholme-200.json").exists()


class TestBernoulliCommand:
    def test_b_p_minus_3_mod_13(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli", "--p", "13", "--index", "p-3", "--prec", "1")
        assert code == 0 and out.strip() == "5"

    def test_odd_index_zero(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli", "--p", "11", "--index", "3", "--prec", "2")
        assert code == 0 and out.strip() == "0"

    def test_huge_index_expression(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli", "--p", "11", "--index", "p^4-p^3-2", "--prec", "1")
        assert code == 0
        from wlab.bernoulli import bernoulli_mod

        assert out.strip() == str(bernoulli_mod(13308, 11, 1).value)

    def test_non_prime_p(self, capsys):
        code, _, err = run_cli(capsys, "bernoulli", "--p", "12", "--index", "2", "--prec", "1")
        assert code == 1

    def test_divisible_index_reported(self, capsys):
        code, _, err = run_cli(capsys, "bernoulli", "--p", "11", "--index", "30", "--prec", "2")
        assert code == 1 and "p-1" in err


class TestReportCommand:
    def test_rerender(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "verify", "--p", "11..31", "--check", "eq1.1")
        path = tmp_path / "reports.jsonl"
        path.write_text(out)
        code, out2, err2 = run_cli(capsys, "report", str(path))
        assert code == 0
        assert out2.count("eq1.1") == len(out.splitlines())
        assert "0 failed" in err2


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_bad_flag(self, capsys):
        assert main(["verify", "--p", "11", "--nope"]) == 1

    def test_p2_reports_runtime_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--p", "2", "--check", "eq1.1")
        assert code == 1 and "odd prime" in err


class TestConsoleScript:
    def test_entry_point(self):
        import shutil
        import subprocess

        exe = shutil.which("wlab")
        if exe is None:
            pytest.skip("console script not installed")
        r = subprocess.run([exe, "bernoulli", "--p", "13", "--index", "p-3", "--prec", "1"],
                           capture_output=True, text=True, timeout=60)
        assert r.returncode == 0 and r.stdout.strip() == "5"
