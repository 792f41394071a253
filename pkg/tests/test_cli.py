import csv
import io
import json
import math

import pytest

from clusterexp.cli import main


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestGraphsCommand:
    def test_counts(self, capsys):
        code, data = run_json(capsys, ["graphs", "count", "--n", "4"])
        assert code == 0
        assert data["connected"] == 38
        assert data["alternating_sum"] == -6
        assert data["schema"] == "clusterexp/1"

    def test_scheme_verification(self, capsys):
        code, data = run_json(capsys, ["graphs", "verify-scheme", "--n", "4",
                                       "--scheme", "kruskal", "--seed", "3"])
        assert code == 0 and data["ok"] is True
        assert data["seed"] == 3


class TestUrsellCommand:
    def test_hardcore_triangle(self, capsys):
        code, data = run_json(capsys, ["ursell", "--matrix", "3; 0 1 inf; 0 2 inf; 1 2 inf"])
        assert code == 0
        assert data["graph_sum"] == 2.0
        assert data["max_relative_spread"] == 0.0


class TestPotentialsCommand:
    def test_eval(self, capsys):
        code, data = run_json(capsys, ["potentials", "eval", "--family", "ruelle",
                                       "--params", "R=1.0", "delta=0.3", "--r", "0.5"])
        assert code == 0 and data["value"] == 11.0

    def test_stability_echoes_seed(self, capsys):
        code, data = run_json(capsys, ["potentials", "stability", "--family", "hard_core",
                                       "--params", "a=1.0", "--n", "4", "--seed", "9"])
        assert code == 0 and data["seed"] == 9 and data["estimate"] == 0.0

    def test_fcc(self, capsys):
        code, data = run_json(capsys, ["potentials", "fcc", "--shells", "1"])
        assert code == 0 and data["n"] == 13 and data["bond_count"] == 36


class TestMayerCommand:
    def test_coefficient_csv_columns(self, capsys):
        code = main(["mayer", "coefficients", "--grid", "2x2", "--family", "hard_core",
                     "--params", "a=1.0", "--n-max", "3", "--format", "csv"])
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [r["n"] for r in rows] == ["1", "2", "3"]
        assert set(rows[0].keys()) == {"n", "C_n", "PR", "PY", "Basuev"}
        assert float(rows[1]["C_n"]) == -1.5

    def test_virial(self, capsys):
        code, data = run_json(capsys, ["mayer", "virial", "--beta", "1.0",
                                       "--Bbar", "0.5", "--Ctilde", "0.3"])
        assert code == 0
        assert data["max_value"] == pytest.approx(0.144767, abs=1e-6)


class TestPolymerCommand:
    def test_domino_criteria(self, capsys):
        code, data = run_json(capsys, ["polymer", "criteria", "--model", "domino"])
        assert code == 0
        assert data["kp"]["radius"] == pytest.approx(1 / (7 * math.e), rel=1e-6)
        assert data["dob"]["radius"] == pytest.approx(0.0566527, rel=1e-5)
        assert data["fp"]["radius"] == pytest.approx(1 / 13, rel=1e-6)

    def test_subset_check_exit_zero(self, capsys):
        code, data = run_json(capsys, ["polymer", "subset-check", "--vertices", "6",
                                       "--seed", "4"])
        assert code == 0 and data["induction_verified"] is True

    def test_catalog(self, capsys):
        code, data = run_json(capsys, ["polymer", "catalog", "--which", "beg_disordered",
                                       "--params", "d=3", "X=10", "Y=1"])
        assert code == 0
        assert data["threshold"] == pytest.approx(math.log(3 * 2**13) / 4, rel=1e-12)


class TestIsingCommand:
    def test_z_rows(self, capsys):
        code, data = run_json(capsys, ["ising", "z", "--L", "3", "--beta", "0.3"])
        assert code == 0
        row = data["rows"][0]
        assert row["highT_rel_err"] < 1e-12
        assert row["lowT_rel_err"] < 1e-12

    def test_duality(self, capsys):
        code, data = run_json(capsys, ["ising", "duality", "--L", "4", "--beta", "0.3"])
        assert code == 0 and data["xi_equal"] is True
        assert data["beta_c"] == pytest.approx(0.4406868, abs=1e-6)

    def test_thresholds(self, capsys):
        code, data = run_json(capsys, ["ising", "thresholds"])
        assert code == 0
        assert data["animal_counts"]["4"] == 4


class TestHardsphereCommand:
    def test_gtilde_reproducible(self, capsys):
        _, a = run_json(capsys, ["hardsphere", "gtilde", "--d", "2", "--k", "3",
                                 "--samples", "50000", "--seed", "7"])
        _, b = run_json(capsys, ["hardsphere", "gtilde", "--d", "2", "--k", "3",
                                 "--samples", "50000", "--seed", "7"])
        assert a["estimate"] == b["estimate"]
        assert a["seed"] == 7

    def test_radius(self, capsys):
        code, data = run_json(capsys, ["hardsphere", "radius"])
        assert code == 0 and data["coefficient"] >= 0.5107


class TestVerifyCommand:
    def test_identities_pass(self, capsys):
        code, data = run_json(capsys, ["verify", "--suite", "identities",
                                       "--max-n", "4", "--trials", "8"])
        assert code == 0 and data["ok"] is True

    def test_combinatorics_pass(self, capsys):
        code, data = run_json(capsys, ["verify", "--suite", "combinatorics", "--max-n", "4"])
        assert code == 0 and data["ok"] is True


class TestHarness:
    def test_unknown_subcommand_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "artifact.json"
        code = main(["graphs", "count", "--n", "3", "--format", "json",
                     "--output", str(path)])
        assert code == 0
        data = json.loads(path.read_text())
        assert data["connected"] == 4

    def test_floats_emitted_with_17_digits(self, capsys):
        main(["mayer", "virial", "--beta", "1.0", "--Bbar", "0.5", "--Ctilde", "0.3",
              "--format", "json"])
        out = capsys.readouterr().out
        val = json.loads(out)["max_value"]
        assert val == float(format(0.14476699807000784, ".17g"))
