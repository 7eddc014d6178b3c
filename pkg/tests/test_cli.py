import io
import json
import pathlib
import subprocess
import sys

import pytest

from gapcode.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def run_cli(args, stdin_text=""):
    """Invoke the CLI in-process, capturing stdout/stderr and the exit code."""
    old_in, old_out, old_err = sys.stdin, sys.stdout, sys.stderr
    sys.stdin = io.StringIO(stdin_text)
    sys.stdout = io.StringIO()
    sys.stderr = io.StringIO()
    try:
        try:
            status = main(args)
        except SystemExit as exc:  # argparse usage failures
            status = exc.code
        return status, sys.stdout.getvalue(), sys.stderr.getvalue()
    finally:
        sys.stdin, sys.stdout, sys.stderr = old_in, old_out, old_err


class TestParams:
    def test_c4(self):
        status, out, _ = run_cli(["params", "--construction", "c", "--ell", "4"])
        assert status == 0
        assert "n=16 k=9 w=4" in out
        assert "seq=1,2,2,4" in out

    def test_bt(self):
        status, out, _ = run_cli(
            ["params", "--construction", "bt", "--ell", "6", "--t", "2"]
        )
        assert status == 0
        assert "n=61 k=18 w=6" in out

    def test_chat9(self):
        status, out, _ = run_cli(["params", "--construction", "chat", "--ell", "9"])
        assert status == 0
        assert "n=512 k=53 w=9" in out

    def test_invalid_combo_exit_1(self):
        status, _, err = run_cli(["params", "--construction", "ct", "--ell", "5"])
        assert status == 1
        assert "error" in err


class TestEncodeDecode:
    def test_golden_line(self):
        status, out, _ = run_cli(
            ["encode", "--construction", "c", "--ell", "4"], "101011100\n"
        )
        assert status == 0
        assert out == "n=16:1,2,10,14\n"

    def test_golden_round_trip(self):
        status, out, _ = run_cli(
            ["decode", "--construction", "c", "--ell", "4"], "n=16:1,2,10,14\n"
        )
        assert status == 0
        assert out == "101011100\n"

    def test_bits_format(self):
        status, out, _ = run_cli(
            ["encode", "--construction", "c", "--ell", "4", "--format", "bits"],
            "101011100\n",
        )
        assert status == 0
        assert out == "0110000000100010\n"
        status, out, _ = run_cli(
            ["decode", "--construction", "c", "--ell", "4", "--format", "bits"],
            "0110000000100010\n",
        )
        assert status == 0
        assert out == "101011100\n"

    def test_hex_format(self):
        status, out, _ = run_cli(
            ["encode", "--construction", "c", "--ell", "4", "--format", "hex"],
            "15c\n",
        )
        assert status == 0
        assert out == "n=16:1,2,10,14\n"
        status, out, _ = run_cli(
            ["decode", "--construction", "c", "--ell", "4", "--format", "hex"],
            "n=16:1,2,10,14\n",
        )
        assert status == 0
        assert out == "15c\n"

    def test_adversarial_weight4_word(self):
        # Either decodes to a message that re-encodes identically, or errors.
        status, out, err = run_cli(
            ["decode", "--construction", "c", "--ell", "4"], "n=16:0,1,2,4\n"
        )
        if status == 0:
            back, enc_out, _ = run_cli(
                ["encode", "--construction", "c", "--ell", "4"], out
            )
            assert back == 0
            assert enc_out == "n=16:0,1,2,4\n"
        else:
            assert status == 2

    def test_bad_line_continues_and_exits_2(self):
        status, out, err = run_cli(
            ["encode", "--construction", "c", "--ell", "4"],
            "101011100\nnot-bits\n101011100\n",
        )
        assert status == 2
        assert out.count("n=16:1,2,10,14") == 2
        assert "line 2" in err

    def test_library_agreement(self):
        import gapcode

        code = gapcode.make_code("chat", 7)
        value = 123456789 % (1 << code.params.k)
        x = gapcode.BitString(value, code.params.k)
        cw = code.encode(x)
        status, out, _ = run_cli(
            ["encode", "--construction", "chat", "--ell", "7"], x.text() + "\n"
        )
        assert status == 0
        assert out.strip() == cw.ones_text()
        status, out, _ = run_cli(
            ["decode", "--construction", "chat", "--ell", "7"], cw.ones_text() + "\n"
        )
        assert status == 0
        assert out.strip() == x.text()

    def test_jobs_preserves_order(self):
        lines = []
        import gapcode

        code = gapcode.make_code("c", 5)
        for v in range(40):
            lines.append(gapcode.BitString(v * 777 % (1 << 15), 15).text())
        stdin = "\n".join(lines) + "\n"
        s1, out1, _ = run_cli(["encode", "--construction", "c", "--ell", "5"], stdin)
        s2, out2, _ = run_cli(
            ["encode", "--construction", "c", "--ell", "5", "--jobs", "2"], stdin
        )
        assert s1 == s2 == 0
        assert out1 == out2


class TestTable:
    def test_golden_file(self):
        status, out, _ = run_cli(["table", "--max-ell", "10"])
        assert status == 0
        assert out == (DATA / "table_3_10.csv").read_text()

    def test_row_content(self):
        status, out, _ = run_cli(["table", "--max-ell", "7"])
        rows = out.splitlines()
        assert rows[-1] == '7,"4,4,4,4,4,4,7","3,3,4,4,5,5,7",31,31'
        assert rows[0] == '3,"1,1,3","1,1,3",5,5'

    def test_bounds_columns(self):
        status, out, _ = run_cli(["table", "--max-ell", "4", "--bounds"])
        assert status == 0
        row4 = out.splitlines()[-1].split(",")
        # ... f, fhat quoted (3 commas inside each at ell=4) -> parse loosely
        assert row4[0] == "4"
        assert row4[-1] == "1"  # delta(4) = 1
        assert row4[-3].startswith("11.")  # stirling bound ~ 11.44
        # floor_log2_binom column
        assert row4[-4] == "10"

    def test_range_check(self):
        status, _, err = run_cli(["table", "--max-ell", "2"])
        assert status == 1


class TestBounds:
    def test_header_and_rows(self):
        status, out, _ = run_cli(["bounds", "--max-ell", "5"])
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == (
            "ell,k_ell,k_hat_ell,floor_log2_binom,stirling_ub,necklace_ub,delta_ell"
        )
        assert len(lines) == 4
        assert lines[1].startswith("3,5,5,5,")


class TestCheckSeq:
    def test_yes(self):
        status, out, _ = run_cli(["check-seq", "1,2,2,4"])
        assert status == 0
        assert "yes" in out
        assert "k=9" in out

    def test_no_shift(self):
        status, out, _ = run_cli(["check-seq", "5,5,5,5,5,5,5,8"])
        assert status == 0
        assert "condition 2" in out

    def test_no_capacity(self):
        status, out, _ = run_cli(["check-seq", "3,3,4,4,5,5,7"])
        assert status == 0
        assert "condition 1" in out

    def test_parse_failure(self):
        status, _, err = run_cli(["check-seq", "1,two,3"])
        assert status == 1


class TestVerify:
    def test_exhaustive_c4(self):
        status, out, _ = run_cli(
            ["verify", "--construction", "c", "--ell", "4", "--exhaustive"]
        )
        assert status == 0
        assert "messages checked: 512" in out
        assert "failures: 0" in out

    def test_sampled_json(self):
        status, out, _ = run_cli(
            [
                "verify", "--construction", "chat", "--ell", "7",
                "--sampled", "--samples", "2000", "--seed", "7", "--json",
            ]
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert payload["failure_count"] == 0

    def test_exhaustive_dt(self):
        status, out, _ = run_cli(
            ["verify", "--construction", "dt", "--ell", "5", "--t", "3", "--exhaustive"]
        )
        assert status == 0
        assert "messages checked: 2048" in out

    def test_budget_guidance_exit_1(self):
        status, _, err = run_cli(
            [
                "verify", "--construction", "c", "--ell", "8",
                "--exhaustive", "--budget", "1024",
            ]
        )
        assert status == 1
        assert "verify_sampled" in err or "sampled" in err


class TestUsageErrors:
    def test_unknown_construction(self):
        status, _, err = run_cli(["params", "--construction", "zz", "--ell", "4"])
        assert status == 1

    def test_missing_ell(self):
        status, _, err = run_cli(["params", "--construction", "c"])
        assert status == 1


def test_console_script_installed():
    out = subprocess.run(
        [sys.executable, "-m", "gapcode.cli", "params", "--construction", "c", "--ell", "3"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert "n=8 k=5 w=3" in out.stdout
