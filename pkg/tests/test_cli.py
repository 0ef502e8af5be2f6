import json

import pytest

from qkincidence import cli
from qkincidence.qkring import AlgorithmDepthError
from qkincidence.suites import VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCommands:
    def test_lr(self, capsys):
        code, out, _ = run(capsys, "--n", "5", "lr", "[2,3]", "[4,5]")
        assert code == 0
        assert out == "O[5,2] - q1*O[1,2] + q1*O[1,3]\n"

    def test_mult_specializes_by_default(self, capsys):
        code, out, _ = run(capsys, "--n", "5", "mult", "O[2,1]", "O[5,1]")
        assert (code, out) == (0, "q1*q2*O[1,2]\n")

    def test_mult_equivariant(self, capsys):
        _, out, _ = run(capsys, "--n", "5", "--equivariant", "mult", "O[2,3]", "O[2,5]")
        assert out == "(1 - z1)*O[2,3] + z1*O[3,2] - z1*O[4,2] + z1*O[4,3]\n"

    def test_global_flags_after_subcommand(self, capsys):
        a = run(capsys, "--n", "5", "--equivariant", "chev", "O[5,1]", "--k", "1")
        b = run(capsys, "chev", "O[5,1]", "--k", "1", "--n", "5", "--equivariant")
        assert a == b
        assert a[0] == 0 and "z1*z2*z3*z4*q1*q2*O[1,5]" in a[1]

    def test_classical(self, capsys):
        _, out, _ = run(capsys, "--n", "5", "--equivariant", "classical", "O[5,1]", "--k", "1")
        assert out == "(1 - z1*z2*z3*z4)*O[5,1]\n"

    def test_invariant(self, capsys):
        assert run(capsys, "--n", "5", "invariant", "[1,2]", "[3,5]", "[4,1]", "--d", "0,0")[1] \
            == "1\n"
        assert run(capsys, "--n", "5", "invariant", "[1,2]", "[3,5]", "[3,2]", "--d", "0,0")[1] \
            == "0\n"

    def test_gwdiv_modes_agree(self, capsys):
        a = run(capsys, "--n", "5", "gwdiv", "[2,3]", "[7,1]", "--k", "1")
        b = run(capsys, "--n", "5", "gwdiv", "[2,3]", "[7,1]", "--k", "1", "--mode", "qclassical")
        assert a == b == (0, "1\n", "")

    def test_gwdiv_equivariant_flag(self, capsys):
        argv = ["--n", "5", "gwdiv", "[2,3]", "[2,1]", "--k", "1"]
        assert run(capsys, *argv, "--equivariant")[1] == "1 - z1\n"
        assert run(capsys, *argv)[1] == "0\n"

    def test_nbhd_iset_dual(self, capsys):
        assert run(capsys, "--n", "5", "nbhd", "[2,3]", "--side", "schubert", "--d", "1,0")[1] \
            == "[5,3]\n"
        assert run(capsys, "--n", "5", "iset", "[4,1]")[1] == "[3,1] [3,2] [4,1] [4,2]\n"
        assert run(capsys, "--n", "5", "dual", "[1,2]")[1] == "O_[1,2] - O_[1,3]\n"

    def test_psi_and_project(self, capsys):
        _, out, _ = run(capsys, "--n", "5", "--cutoff", "1,1", "psi", "O[5,1]")
        assert out == "O[5,1] + q2*O[5,4] + q1*O[2,1] + q1*q2*O[1,5]\n"
        assert run(capsys, "--n", "5", "project", "O[6,-3]")[1] == "q*O^0\n"

    def test_poly(self, capsys):
        assert run(capsys, "--n", "4", "poly", "[2,1]")[1] == "-q2 + q2*M1 + M2^3\n"

    def test_table(self, capsys):
        code, out, _ = run(capsys, "--n", "3", "table")
        assert code == 0
        assert len(out.splitlines()) == 36

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "--n", "5", "--format", "json", "lr", "[1,2]", "[2,1]")
        data = json.loads(out)
        assert code == 0
        assert data["terms"] == [{"i": 2, "j": -2, "bar": [2, 3], "degree": [0, 1],
                                  "coeff": [{"exp": [0, 0, 0, 0], "c": "1"}]}]


class TestVerify:
    def test_pass_and_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.txt"
        code, out, _ = run(capsys, "--n", "3", "verify", "iset-oracle", "--out", str(path))
        assert code == 0
        assert "result: PASS" in out
        assert path.read_text() == out

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "--n", "3", "--format", "json", "verify", "lemma-chi")
        data = json.loads(out)
        assert code == 0 and data["passed"] and data["suite"] == "lemma-chi"

    def test_timing_goes_to_stderr(self, capsys):
        _, out, err = run(capsys, "--n", "3", "verify", "iset-oracle", "--timing")
        assert "elapsed" in err and "elapsed" not in out

    def test_failure_exit_code(self, capsys, monkeypatch):
        def fake(name, n, cutoff, eq):
            r = VerificationReport(name, n, None, "non-equivariant")
            r.check("x", 1, 2)
            return r
        monkeypatch.setattr(cli, "run_suite", fake)
        code, out, _ = run(capsys, "--n", "3", "verify", "iset-oracle")
        assert code == 1
        assert "FAIL x: expected 1; got 2" in out

    def test_report_only_never_fails(self, capsys, monkeypatch):
        def fake(name, n, cutoff, eq):
            r = VerificationReport(name, n, None, "equivariant", report_only=True)
            r.check("x", 1, 2)
            return r
        monkeypatch.setattr(cli, "run_suite", fake)
        assert run(capsys, "--n", "3", "verify", "equivariant-positivity-conjecture")[0] == 0


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ["lr", "[1,2]", "[2,1]"],
        ["--n", "5", "mult", "O[1,2", "O[1,2]"],
        ["--n", "5", "mult", "O[2,2]", "O[1,2]"],
        ["--n", "5", "invariant", "[1,2]", "[3,5]", "[4,1]", "--d=-1,0"],
        ["--n", "5", "iset", "[6,2]"],
        ["--n", "5", "gwdiv", "[2,3]", "[2,8]", "--k", "1", "--mode", "qclassical"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2
        assert out == "" and "error" in err

    def test_argparse_errors(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["--n", "2", "lr", "[1,2]", "[2,1]"])
        assert info.value.code == 2
        with pytest.raises(SystemExit):
            cli.main(["--n", "5", "verify", "no-such-suite"])

    def test_internal_error(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise AlgorithmDepthError("depth exceeded")
        monkeypatch.setattr(cli, "mult", boom)
        code, _, err = run(capsys, "--n", "5", "mult", "O[1,2]", "O[1,2]")
        assert code == 3
        assert "internal error" in err
