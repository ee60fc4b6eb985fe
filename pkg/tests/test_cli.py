import io
import subprocess
import sys

import pytest

from argval.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(map(str, argv)), out, err)
    return code, out.getvalue(), err.getvalue()


class TestSolve:
    def test_preferred(self, data_dir):
        assert call("solve", "--semantics", "preferred", data_dir / "example1.af") == (0, "{A,D}\n{B,D}\n", "")

    def test_statuses(self, data_dir):
        code, out, _ = call("solve", "--status", data_dir / "example1.af")
        assert code == 0
        assert out.splitlines()[-4:] == ["A: defensible", "B: defensible", "C: overruled", "D: justified"]

    def test_no_stable_extension(self, tmp_path):
        f = tmp_path / "loop.af"
        f.write_text("arg(a).\natt(a,a).\n")
        code, _, err = call("solve", "--semantics", "stable", f)
        assert code == 1 and "stable" in err

    def test_seed_fixes_random_input(self):
        first = call("--seed", "4", "solve", "--random", "6")
        assert first == call("solve", "--random", "6", "--seed", "4")
        assert first[1] != call("solve", "--random", "6", "--seed", "5")[1]

    def test_size_bound_is_a_resource_error(self, data_dir):
        assert call("solve", "--max-nodes", "2", data_dir / "example1.af")[0] == 3


class TestErrors:
    def test_missing_file(self, tmp_path):
        code, _, err = call("solve", tmp_path / "nope.af")
        assert code == 2 and "nope.af" in err

    def test_malformed_file_reports_line(self, tmp_path):
        f = tmp_path / "bad.af"
        f.write_text("arg(a).\natt(a,b).\n")
        code, _, err = call("solve", f)
        assert code == 2 and ":2" in err

    def test_usage_error(self):
        assert call("frobnicate")[0] == 2


class TestOtherCommands:
    def test_vaf(self, data_dir):
        code, out, _ = call("vaf", "--audience", "y", data_dir / "vaf_kb0.vaf")
        assert code == 0
        assert "  preferred {A1,A3,A4}" in out.splitlines()
        assert "  practice agriculture > restoration" in out.splitlines()

    def test_build(self, tmp_path):
        kb = tmp_path / "k.kb"
        kb.write_text("a\na -> b\n")
        code, out, _ = call("build", "--targets", "b", kb)
        assert code == 0
        assert out.splitlines()[0] == "argument(arg1, [a; a -> b], b)."

    @pytest.mark.parametrize(
        "args, verdict",
        [
            (["--thesis", "a & ~a", "--preset", "d11", "--decide"], "The Proponent wins"),
            (["--thesis", "a & ~a"], "The Opponent wins"),
            (["--thesis", "y", "--premises", "a; a -> y"], "The Proponent wins"),
        ],
    )
    def test_dialogue_decide(self, args, verdict):
        code, out, _ = call("dialogue", *args)
        assert code == 0 and out == verdict + "\n"

    def test_dialogue_script(self, data_dir):
        code, out, _ = call("dialogue", "--thesis", "a & ~a", "--script", data_dir / "table3.script")
        assert out == (data_dir / "table3.txt").read_text()

    def test_dialogue_strategy(self):
        code, out, _ = call("dialogue", "--thesis", "a | ~a", "--rank-p", "2", "--decide", "--strategy")
        assert out.splitlines()[0] == "O attack 0 ?"
        assert out.splitlines()[-1] == "The Proponent wins"

    def test_depth_cap(self):
        code, _, err = call("dialogue", "--thesis", "(a -> b) -> ~b -> ~a", "--rank-p", "2", "--depth-cap", "2")
        assert code == 3 and "depth cap" in err

    def test_dkq(self, data_dir):
        assert call("dkq", data_dir / "dkq_samples" / "identity.dkq") == (0, "ok\n", "")
        code, out, _ = call("dkq", data_dir / "dkq_samples" / "not_an_instance.dkq")
        assert code == 1 and out.startswith("error at line 1:")

    def test_dot(self, data_dir):
        code, out, _ = call("dot", data_dir / "example1.af")
        assert out.startswith("digraph AF {")
        code, out, _ = call("dot", "--audience", "w", "--hasse", data_dir / "vaf_kb0.vaf")
        assert '"restoration" -> "agriculture";' in out


class TestPlumbing:
    def test_config_supplies_defaults(self, tmp_path, data_dir):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# defaults\nsemantics = grounded\nstatus = true\n")
        code, out, _ = call("--config", cfg, "solve", data_dir / "example1.af")
        assert out.splitlines()[0] == "{}"
        # explicit options win over the file
        code, out, _ = call("--config", cfg, "solve", "--semantics", "preferred", data_dir / "example1.af")
        assert out.splitlines()[0] == "{A,D}"

    def test_bad_config(self, tmp_path, data_dir):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("semantics\n")
        assert call("--config", cfg, "solve", data_dir / "example1.af")[0] == 2

    def test_output_file(self, tmp_path, data_dir):
        target = tmp_path / "out.txt"
        assert call("-o", target, "solve", data_dir / "example1.af") == (0, "", "")
        assert target.read_bytes() == b"{A,D}\n{B,D}\n"

    def test_byte_stable(self, data_dir):
        runs = {call("vaf", data_dir / "vaf_kb1.vaf")[1] for _ in range(3)}
        assert len(runs) == 1

    def test_module_entry_point(self, data_dir):
        proc = subprocess.run(
            [sys.executable, "-m", "argval", "solve", "--semantics", "preferred", str(data_dir / "example1.af")],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "{A,D}\n{B,D}\n"
