import io
import contextlib

import pytest

from veronese_sdepth import build_partition
from veronese_sdepth.cli import main, parse_partition_file, write_partition_file
from veronese_sdepth.errors import PartitionFileError


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def machine_lines(text):
    pairs = {}
    for line in text.splitlines():
        if "=" in line and " " not in line.split("=", 1)[0]:
            key, value = line.split("=", 1)
            pairs[key] = value
    return pairs


class TestReport:
    def test_verified_instance(self):
        code, out, _ = run(["report", "-n", "5", "-d", "2"])
        values = machine_lines(out)
        assert code == 0
        assert values["conjectured"] == "3"
        assert values["certified_lower"] == "3"
        assert values["verified"] == "yes"

    def test_k3_path(self):
        code, out, _ = run(["report", "-n", "7", "-d", "1"])
        assert code == 0 and machine_lines(out)["certified_lower"] == "4"

    def test_bounds_only_instance(self):
        code, out, _ = run(["report", "-n", "29", "-d", "1"])
        values = machine_lines(out)
        assert code == 10
        assert values["certified_lower"] == "6"
        assert values["upper_bound"] == "15"
        assert values["verified"] == "no"

    def test_oracle_flag(self):
        code, out, _ = run(["report", "-n", "6", "-d", "2", "--oracle"])
        assert code == 0 and machine_lines(out)["oracle_exact"] == "3"

    def test_bad_arguments(self):
        code, _, err = run(["report", "-n", "0", "-d", "1"])
        assert code == 2 and err
        code, _, _ = run(["report", "-n", "5"])
        assert code == 2


class TestBuildVerify:
    def test_roundtrip(self, tmp_path):
        out_file = tmp_path / "p.txt"
        code, out, _ = run(["build", "-n", "5", "-d", "2", "--out", str(out_file)])
        assert code == 0 and "min_upper_size=3" in out
        code, out, _ = run(["verify", "--in", str(out_file)])
        assert code == 0 and "verified" in out

    def test_file_format_roundtrip_identity(self, tmp_path):
        part, _ = build_partition(6, 2)
        path = tmp_path / "p.txt"
        write_partition_file(part, str(path))
        assert parse_partition_file(str(path)) == part

    def test_k3_build(self, tmp_path):
        out_file = tmp_path / "p.txt"
        code, out, _ = run(["build", "-n", "7", "-d", "1", "--k3", "--out", str(out_file)])
        assert code == 0 and "min_upper_size=4" in out

    def test_k3_wrong_n(self, tmp_path):
        code, _, err = run(["build", "-n", "8", "-d", "1", "--k3", "--out", str(tmp_path / "p")])
        assert code == 2 and "4d + 3" in err

    def test_trivial_build(self, tmp_path):
        out_file = tmp_path / "p.txt"
        code, _, _ = run(["build", "-n", "4", "-d", "2", "--out", str(out_file)])
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "n=4 d=2 regime=TrivialRange"
        assert all(line.split(";")[0] == line.split(";")[1] for line in lines[1:])

    def test_cap_guard(self, tmp_path):
        code, _, err = run(
            ["build", "-n", "24", "-d", "5", "--cap", "1000", "--out", str(tmp_path / "p")]
        )
        assert code == 2 and "cap" in err

    def test_mutations(self, tmp_path):
        out_file = tmp_path / "p.txt"
        run(["build", "-n", "5", "-d", "2", "--out", str(out_file)])
        original = out_file.read_text().splitlines(keepends=True)

        out_file.write_text("".join(original[:-1]))
        code, out, _ = run(["verify", "--in", str(out_file)])
        assert code == 4 and "uncovered" in out

        out_file.write_text("".join(original) + original[-1])
        code, out, _ = run(["verify", "--in", str(out_file)])
        assert code == 4 and "not disjoint" in out

        out_file.write_text("n=five d=2 regime=K1\n" + "".join(original[1:]))
        code, _, err = run(["verify", "--in", str(out_file)])
        assert code == 2 and "header" in err

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("n=5 d=2 regime=K1\n1,2;1,2,5\n3,1;1,2,3\n")
        with pytest.raises(PartitionFileError) as exc:
            parse_partition_file(str(path))
        assert exc.value.lineno == 3

    def test_parse_rejects_out_of_range_member(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("n=5 d=2 regime=K1\n1,6;1,6\n")
        code, _, err = run(["verify", "--in", str(path)])
        assert code == 2 and "line 2" in err

    def test_parse_rejects_regime_mismatch(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("n=5 d=2 regime=Large\n1,2;1,2,5\n")
        code, _, err = run(["verify", "--in", str(path)])
        assert code == 2


class TestTable:
    def test_exact_range(self):
        code, out, _ = run(["table", "--d-range", "2..2", "--n-range", "5..10"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,d,regime,conjectured,certified_lower,upper_bound,verified"
        assert len(lines) == 7
        for line in lines[1:]:
            fields = line.split(",")
            assert fields[3] == fields[4] and fields[6] == "yes"

    def test_proven_range_for_d1(self):
        code, out, _ = run(["table", "--d-range", "1..1", "--n-range", "2..6"])
        assert code == 0
        for line in out.strip().splitlines()[1:]:
            fields = line.split(",")
            assert fields[3] == fields[4], line

    def test_band_rows(self):
        code, out, _ = run(["table", "--d-range", "1..1", "--n-range", "7..9"])
        rows = {line.split(",")[0]: line.split(",") for line in out.strip().splitlines()[1:]}
        assert rows["7"][4] == "4" and rows["7"][6] == "yes"
        assert rows["8"][4] == "4" and rows["8"][6] == "yes"
        assert rows["9"][6] == "no"

    def test_row_order_and_skip(self):
        code, out, _ = run(["table", "--d-range", "1..2", "--n-range", "1..4", "--cap", "3"])
        lines = out.strip().splitlines()[1:]
        keys = [(int(l.split(",")[1]), int(l.split(",")[0])) for l in lines]
        assert keys == sorted(keys)
        assert all(l.split(",")[0] >= l.split(",")[1] for l in lines)
        assert any("SKIPPED(cap)" in l for l in lines)

    def test_bad_range(self):
        code, _, _ = run(["table", "--d-range", "2..1", "--n-range", "1..4"])
        assert code == 2
        code, _, _ = run(["table", "--d-range", "x", "--n-range", "1..4"])
        assert code == 2


class TestBlocks:
    def test_examples(self):
        code, out, _ = run(["blocks", "-n", "5", "--set", "1,2", "--density", "2"])
        assert code == 0 and out == "B[1..4] G[5..5]\nf=1,2,5\n"
        code, out, _ = run(["blocks", "-n", "5", "--set", "1", "--density", "2"])
        assert code == 0 and out.splitlines()[0] == "B[1..2] G[3..5]"

    def test_density_out_of_range(self):
        code, _, err = run(["blocks", "-n", "5", "--set", "1,2,3", "--density", "2"])
        assert code == 2 and err

    def test_rational_density(self):
        code, out, _ = run(["blocks", "-n", "7", "--set", "1,3", "--density", "3/2"])
        assert code == 0

    def test_empty_set(self):
        code, _, _ = run(["blocks", "-n", "5", "--set", "", "--density", "2"])
        assert code == 2


class TestOracleCommand:
    def test_value(self):
        code, out, _ = run(["oracle", "-n", "5", "-d", "2"])
        assert code == 0 and "oracle_exact=3" in out

    def test_budget_exhaustion(self):
        code, out, _ = run(["oracle", "-n", "6", "-d", "1", "--budget", "5"])
        assert code == 10 and "oracle_exact=none" in out
