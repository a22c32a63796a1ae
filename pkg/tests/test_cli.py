"""Command-line surface: subcommands, exit codes, output formats."""

import json
import subprocess
import sys

import pytest

PYTHON = sys.executable


def run(*args, env_extra=None):
    import os
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([PYTHON, "-m", "pathsum", *args],
                          capture_output=True, text=True, env=env)


@pytest.fixture
def h_circuit(tmp_path):
    path = tmp_path / "h.pathsum"
    path.write_text("qubits 1\nh 0\n")
    return str(path)


@pytest.fixture
def x_circuit(tmp_path):
    path = tmp_path / "x.pathsum"
    path.write_text("qubits 1\nx 0\n")
    return str(path)


class TestAmp:
    def test_hadamard(self, h_circuit):
        r = run("amp", "--circuit", h_circuit, "--in", "0", "--out", "0")
        assert r.returncode == 0
        assert "amplitude: 1 * 2^(-1/2)" in r.stdout
        assert "decimal: 0.707106781186548" in r.stdout

    def test_x_zero_amplitude(self, x_circuit):
        r = run("amp", "--circuit", x_circuit, "--in", "0", "--out", "0")
        assert r.returncode == 0
        assert "amplitude: 0" in r.stdout

    def test_json_matches_human(self, h_circuit):
        human = run("amp", "--circuit", h_circuit, "--in", "0", "--out", "1")
        machine = run("amp", "--circuit", h_circuit, "--in", "0", "--out", "1",
                      "--json")
        data = json.loads(machine.stdout)
        assert data["amplitude"] == {"num": 1, "half_exp": -1}
        assert f"decimal: {data['decimal']}" in human.stdout
        assert f"amplitude: {data['render']}" in human.stdout

    def test_malformed_file_exits_2(self, tmp_path):
        path = tmp_path / "bad.pathsum"
        path.write_text("qubits 1\nz 0 0\n")
        r = run("amp", "--circuit", str(path), "--in", "0", "--out", "0")
        assert r.returncode == 2
        assert "line 2" in r.stderr

    def test_width_mismatch_exits_2(self, h_circuit):
        r = run("amp", "--circuit", h_circuit, "--in", "00", "--out", "0")
        assert r.returncode == 2

    def test_guard_exits_3(self, tmp_path):
        lines = ["qubits 3"]
        for _ in range(2):
            lines += [f"h {q}" for q in range(3)] + ["z 0 1 2"]
        lines += [f"h {q}" for q in range(3)]
        path = tmp_path / "deep.pathsum"
        path.write_text("\n".join(lines) + "\n")
        r = run("amp", "--circuit", str(path), "--in", "000", "--out", "000",
                "--max-eval-vars", "2")
        assert r.returncode == 3

    def test_malformed_env_var_reports(self, h_circuit):
        r = run("amp", "--circuit", h_circuit, "--in", "0", "--out", "0",
                env_extra={"PATHSUM_MAX_EVAL_VARS": "lots"})
        assert r.returncode == 2
        assert "PATHSUM_MAX_EVAL_VARS" in r.stderr

    def test_env_var_guard(self, tmp_path):
        path = tmp_path / "deep.pathsum"
        lines = ["qubits 3"]
        for _ in range(2):
            lines += [f"h {q}" for q in range(3)] + ["z 0 1 2"]
        lines += [f"h {q}" for q in range(3)]
        path.write_text("\n".join(lines) + "\n")
        r = run("amp", "--circuit", str(path), "--in", "000", "--out", "000",
                env_extra={"PATHSUM_MAX_EVAL_VARS": "2"})
        assert r.returncode == 3


class TestMeasure:
    def test_h_half(self, h_circuit):
        r = run("measure", "--circuit", h_circuit, "--in", "0", "--qubit", "0")
        assert r.returncode == 0
        assert "probability: 1 * 2^(-1)" in r.stdout
        assert "decimal: 0.5" in r.stdout

    def test_x_certain(self, x_circuit):
        r = run("measure", "--circuit", x_circuit, "--in", "0", "--qubit", "0")
        assert "probability: 1" in r.stdout

    def test_qubit_out_of_range_exits_2(self, h_circuit):
        r = run("measure", "--circuit", h_circuit, "--in", "0", "--qubit", "5")
        assert r.returncode == 2


class TestHiddenShift:
    def test_gen_then_solve_round_trip(self, tmp_path):
        out = str(tmp_path / "hs.pathsum")
        r = run("hidden-shift-gen", "--n", "6", "--shift", "011010",
                "--g", "0,1,2;1", "-o", out, "--json")
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert data["ccz"] == 2
        r2 = run("hidden-shift-solve", "--circuit", out)
        assert r2.returncode == 0
        assert "shift: 011010" in r2.stdout
        assert "rewrite steps:" in r2.stdout

    def test_gen_with_permutation(self, tmp_path):
        out = str(tmp_path / "hs.pathsum")
        r = run("hidden-shift-gen", "--n", "4", "--shift", "1100",
                "--pi", "1,0", "-o", out)
        assert r.returncode == 0
        r2 = run("hidden-shift-solve", "--circuit", out, "--json")
        assert json.loads(r2.stdout)["shift"] == "1100"

    def test_shift_width_mismatch_exits_2(self, tmp_path):
        r = run("hidden-shift-gen", "--n", "4", "--shift", "110",
                "-o", str(tmp_path / "x"))
        assert r.returncode == 2

    def test_odd_n_exits_2(self, tmp_path):
        r = run("hidden-shift-gen", "--n", "3", "--shift", "110",
                "-o", str(tmp_path / "x"))
        assert r.returncode == 2

    def test_bad_monomial_exits_2(self, tmp_path):
        r = run("hidden-shift-gen", "--n", "8", "--shift", "0" * 8,
                "--g", "0,1,2,3", "-o", str(tmp_path / "x"))
        assert r.returncode == 2

    def test_non_permutation_exits_2(self, tmp_path):
        r = run("hidden-shift-gen", "--n", "4", "--shift", "0000",
                "--pi", "0,0", "-o", str(tmp_path / "x"))
        assert r.returncode == 2

    def test_solve_nondeterministic_exits_4(self, h_circuit):
        r = run("hidden-shift-solve", "--circuit", h_circuit)
        assert r.returncode == 4

    def test_sixteen_qubit_instance_with_eight_ccz(self, tmp_path):
        out = str(tmp_path / "big.pathsum")
        shift = "1011000111001010"
        r = run("hidden-shift-gen", "--n", "16", "--shift", shift,
                "--g", "0,1,2;1,2,3;4,5,6;5,6,7", "-o", out, "--json")
        assert json.loads(r.stdout)["ccz"] == 8
        r2 = run("hidden-shift-solve", "--circuit", out, "--json")
        assert r2.returncode == 0
        data = json.loads(r2.stdout)
        assert data["shift"] == shift
        # the step counter stays within the state sum's variable budget
        from pathsum.circuit import parse
        from pathsum.sums import compose, interpret, ket
        circ = parse(open(out).read())
        g = compose(interpret(circ), ket((0,) * 16))
        assert data["rewrite_steps"] <= 16 * (2 * g.num_vars + 3 * 16)


class TestNormalize:
    def test_reduces_hidden_shift_to_constants(self, tmp_path):
        out = str(tmp_path / "hs.pathsum")
        run("hidden-shift-gen", "--n", "4", "--shift", "0110", "-o", out)
        r = run("normalize", "--circuit", out, "--in", "0000")
        assert r.returncode == 0
        data = json.loads(r.stdout.strip().splitlines()[-1])
        assert data["num_vars"] == 0
        assert data["scalar"] == {"zero": False, "half_exp": 0}
        assert data["outputs"] == [[], [[]], [[]], []]  # 0,1,1,0

    def test_identity_shape(self, tmp_path):
        path = tmp_path / "id.pathsum"
        path.write_text("qubits 2\n")
        r = run("normalize", "--circuit", str(path))
        data = json.loads(r.stdout)
        assert data["num_vars"] == 2
        assert data["outputs"] == data["inputs"] == [[[0]], [[1]]]

    def test_trace_reproducible(self, tmp_path):
        out = str(tmp_path / "hs.pathsum")
        run("hidden-shift-gen", "--n", "4", "--shift", "1010", "-o", out)
        r1 = run("normalize", "--circuit", out, "--strategy", "random",
                 "--seed", "5", "--trace", "--json")
        r2 = run("normalize", "--circuit", out, "--strategy", "random",
                 "--seed", "5", "--trace", "--json")
        assert r1.stdout == r2.stdout
        trace = json.loads(r1.stdout)["trace"]
        assert trace and all(
            line.split()[0] in ("ELIM", "Z", "HH") for line in trace)


class TestCheckConfluence:
    def test_all_trials_pass(self):
        r = run("check-confluence", "--trials", "30", "--max-vars", "8",
                "--seed", "3", "--json")
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert data["passes"] == 30 and data["failures"] == 0

    def test_large_cap_warns_and_falls_back(self):
        r = run("check-confluence", "--trials", "5", "--max-vars", "12",
                "--seed", "3")
        assert r.returncode == 0
        assert "falling back" in r.stderr

    def test_reproducible(self):
        a = run("check-confluence", "--trials", "10", "--seed", "9", "--json")
        b = run("check-confluence", "--trials", "10", "--seed", "9", "--json")
        assert a.stdout == b.stdout

    def test_five_hundred_trials(self):
        r = run("check-confluence", "--trials", "500", "--max-vars", "8",
                "--seed", "1", "--json")
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert data["passes"] == 500 and data["failures"] == 0
