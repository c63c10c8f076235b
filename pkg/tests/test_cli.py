import json

import pytest

from asdcong.cli import main, parse_int_values, parse_modulus


class TestParsing:
    def test_int_values(self):
        assert parse_int_values("1,2,3") == (1, 2, 3)
        assert parse_int_values("3..6") == (3, 4, 5, 6)
        assert parse_int_values("-2..1") == (-2, -1, 0, 1)
        assert parse_int_values("1,4..6,9") == (1, 4, 5, 6, 9)
        assert parse_int_values("5..3") == ()
        with pytest.raises(ValueError):
            parse_int_values("x")

    def test_modulus(self):
        assert parse_modulus("5^2") == (5, 2)
        assert parse_modulus("7") == (7, 1)
        with pytest.raises(ValueError):
            parse_modulus("5^0")
        with pytest.raises(ValueError):
            parse_modulus("abc")


class TestVerify:
    def test_pass_writes_report(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            [
                "verify",
                "--suite",
                "thm-main",
                "--primes",
                "3..13",
                "--m",
                "1,2,3",
                "--n",
                "1..2",
                "--alpha",
                "1..2",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["summary"]["failed"] == 0
        assert doc["summary"]["errored"] == 0
        assert doc["summary"]["total"] == len(doc["cases"]) > 0
        assert doc["meta"]["tool"] == "asdcong"
        assert all(case["pass"] for case in doc["cases"])

    def test_literal_falsification_exits_1(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            [
                "verify",
                "--suite",
                "thm-main",
                "--variant",
                "literal",
                "--primes",
                "5..5",
                "--m",
                "1",
                "--n",
                "1..1",
                "--alpha",
                "1..1",
                "--out",
                str(out),
            ]
        )
        assert code == 1
        doc = json.loads(out.read_text())
        assert doc["summary"]["failed"] == 1
        assert doc["cases"][0]["achieved_valuation"] == 0

    def test_exact_identity_sweep(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            ["verify", "--suite", "lemma-2-2", "--m", "-5..5", "--n", "1..50", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["summary"]["total"] == 10 * 50
        assert doc["summary"]["min_margin_by_suite"]["lemma-2-2"] == "inf"
        assert doc["cases"][0]["required_exponent"] == "inf"

    def test_stdout_when_no_out_flag(self, capsys):
        code = main(
            ["verify", "--suite", "eq-mod-p", "--primes", "3..3", "--m", "1,2"]
        )
        assert code == 0
        captured = capsys.readouterr()
        doc = json.loads(captured.out)
        assert doc["summary"]["passed"] == 2

    def test_invalid_flags_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "no-such-suite"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--primes", "bogus"])
        assert exc.value.code == 2

    def test_byte_identical_reports(self, tmp_path):
        args = [
            "verify",
            "--suite",
            "thm-main",
            "--primes",
            "3..7",
            "--n",
            "1..2",
            "--alpha",
            "1..2",
        ]
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        third = tmp_path / "c.json"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        assert main(args + ["--jobs", "4", "--out", str(third)]) == 0
        assert first.read_bytes() == second.read_bytes() == third.read_bytes()

    def test_lemma_2_5_seeded(self, tmp_path):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        args = ["verify", "--suite", "lemma-2-5", "--trials", "10", "--seed", "3"]
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()


class TestScan:
    def test_literal_scan_prints_failures(self, capsys):
        code = main(
            [
                "scan",
                "--suite",
                "thm-main",
                "--variant",
                "literal",
                "--primes",
                "3..20",
                "--n",
                "1..1",
                "--alpha",
                "1..1",
            ]
        )
        assert code == 1
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines and all(line.startswith("FAIL") for line in lines)
        assert any("p=5 m=1" in line for line in lines)

    def test_corrected_scan_is_quiet(self, capsys):
        code = main(
            ["scan", "--suite", "thm-main", "--primes", "3..13", "--n", "1..2", "--alpha", "1..2"]
        )
        assert code == 0
        assert capsys.readouterr().out == ""

    def test_empty_range(self, capsys):
        code = main(["scan", "--suite", "thm-main", "--primes", "23..22"])
        assert code == 0
        assert capsys.readouterr().out == ""

    def test_stop_after(self, capsys):
        code = main(
            [
                "scan",
                "--suite",
                "thm-main",
                "--variant",
                "literal",
                "--primes",
                "3..20",
                "--stop-after",
                "2",
            ]
        )
        assert code == 1
        assert len(capsys.readouterr().out.strip().splitlines()) == 2

    def test_no_cases_scan(self, capsys):
        code = main(["scan", "--suite", "eq-apery", "--primes", "3..3"])
        assert code == 0
        assert capsys.readouterr().out == ""


class TestEval:
    def test_series_exact(self, capsys):
        assert main(["eval", "--series", "s", "--m", "1", "--N", "5"]) == 0
        assert capsys.readouterr().out.strip() == "99"
        assert main(["eval", "--series", "s", "--m", "5", "--N", "3"]) == 0
        assert capsys.readouterr().out.strip() == "41/25"

    def test_series_modular(self, capsys):
        assert main(["eval", "--series", "s", "--m", "2", "--N", "3", "--mod", "3^2"]) == 0
        assert capsys.readouterr().out.strip() == "8 * 3^0 mod 3^2"

    def test_apery(self, capsys):
        assert main(["eval", "--series", "apery", "--index", "4"]) == 0
        assert capsys.readouterr().out.strip() == "33001"

    def test_lucas(self, capsys):
        assert main(["eval", "--series", "lucas", "--m", "3", "--index", "4"]) == 0
        assert capsys.readouterr().out.strip() == "-1"

    def test_malformed_modulus_exits_2(self):
        for bad in ("x", "4^2", "5^-1", "2^3"):
            with pytest.raises(SystemExit) as exc:
                main(["eval", "--series", "s", "--m", "1", "--N", "5", "--mod", bad])
            assert exc.value.code == 2

    def test_degenerate_modulus_reports_error(self, capsys):
        code = main(["eval", "--series", "s", "--m", "5", "--N", "3", "--mod", "5^2"])
        assert code == 1
        assert "error" in capsys.readouterr().err
