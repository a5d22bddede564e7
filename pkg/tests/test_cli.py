import json
import math

import pytest

from inellipse.cli import main
from inellipse.conic import ConicCoeffs, center, geometry, scale_normalized

from conftest import EXAMPLE_R_STAR, EXAMPLE_VERTICES


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.json"
    path.write_text(json.dumps({"vertices": EXAMPLE_VERTICES,
                                "label": "worked-example"}))
    return str(path)


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]}))
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestClassify:
    def test_example(self, capsys, example_file):
        code, doc = run_json(capsys, ["classify", example_file])
        assert code == 0
        cls = doc["classification"]
        assert cls["mdq_type1"] is True
        assert cls["mdq_type2"] is False
        assert cls["parallelogram"] is False
        assert doc["label"] == "worked-example"

    def test_square_flags(self, capsys, square_file):
        code, doc = run_json(capsys, ["classify", square_file])
        cls = doc["classification"]
        assert all(cls[k] for k in ("parallelogram", "trapezoid", "tangential",
                                    "orthodiagonal", "kite", "mdq_type1",
                                    "mdq_type2"))

    def test_concave_exit_3(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"vertices": [[0, 0], [4, 0], [2, 3], [2, 1]]}))
        assert main(["classify", str(path)]) == 3

    def test_parse_error_exit_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert main(["classify", str(path)]) == 2

    def test_schema_error_exit_2(self, tmp_path):
        path = tmp_path / "schema.json"
        path.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [1, 1]]}))
        assert main(["classify", str(path)]) == 2


class TestInscribe:
    def test_example_r37(self, capsys, example_file):
        code, doc = run_json(capsys, ["inscribe", "--param", repr(3 / 7),
                                      example_file])
        assert code == 0
        ell = doc["ellipse"]
        assert ell["center"][0] == pytest.approx(3.5, abs=1e-9)
        assert ell["center"][1] == pytest.approx(1.75, abs=1e-9)
        assert ell["tangency"][0][1] == pytest.approx(3 / 7, abs=1e-10)

    def test_square_incircle(self, capsys, square_file):
        code, doc = run_json(capsys, ["inscribe", "--param", "0", square_file])
        assert code == 0
        assert doc["ellipse"]["eccentricity"] == pytest.approx(0.0, abs=1e-12)

    def test_param_out_of_range_exit_4(self, example_file):
        assert main(["inscribe", "--param", "1.0", example_file]) == 4

    def test_json_roundtrip_reproduces_geometry(self, capsys, example_file):
        _, doc = run_json(capsys, ["inscribe", "--param", "0.3", example_file])
        ell = doc["ellipse"]
        conic = ConicCoeffs(*ell["coefficients"])
        cx, cy = center(conic)
        assert cx == pytest.approx(ell["center"][0], abs=1e-12)
        assert cy == pytest.approx(ell["center"][1], abs=1e-12)
        geo = geometry(conic)
        assert geo.eccentricity == pytest.approx(ell["eccentricity"], abs=1e-12)

    def test_coefficients_max_abs_normalized(self, capsys, example_file):
        _, doc = run_json(capsys, ["inscribe", "--param", "0.3", example_file])
        coeffs = doc["ellipse"]["coefficients"]
        assert max(abs(x) for x in coeffs) == pytest.approx(1.0, abs=1e-15)


class TestMinEcc:
    def test_example(self, capsys, example_file):
        code, doc = run_json(capsys, ["min-ecc", example_file])
        assert code == 0
        assert doc["min_ecc"]["method"] == "alpha_closed_form"
        assert doc["min_ecc"]["r_star"] == pytest.approx(EXAMPLE_R_STAR, abs=1e-12)
        ver = doc["verification"]
        assert ver["t3_parallel"] and ver["t3_equal_lengths"]
        assert ver["diameter_len_sq"][0] == pytest.approx(
            ver["diameter_len_sq"][1], rel=1e-9)

    def test_square(self, capsys, square_file):
        code, doc = run_json(capsys, ["min-ecc", square_file])
        assert doc["min_ecc"]["eccentricity"] == 0.0
        assert doc["min_ecc"]["method"] == "incircle"
        assert doc["verification"]["near_circle"] is True

    def test_non_mdq_numeric_no_t3_block(self, capsys, tmp_path):
        path = tmp_path / "generic.json"
        path.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [2, 3], [1, 0]]}))
        code, doc = run_json(capsys, ["min-ecc", str(path)])
        assert code == 0
        assert doc["min_ecc"]["method"] == "quartic_numeric"
        assert "verification" not in doc

    def test_exploratory_angle_block(self, capsys, example_file, tmp_path):
        _, doc = run_json(capsys, ["min-ecc", example_file])
        block = doc["min_ecc"]
        # for an MDQ the two angles coincide
        assert block["equal_conjugate_angle"] == pytest.approx(
            block["diagonal_angle"], abs=1e-9)
        path = tmp_path / "generic.json"
        path.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [2, 3], [1, 0]]}))
        _, doc = run_json(capsys, ["min-ecc", str(path)])
        # reported for non-MDQs too, with no equality claim
        assert "equal_conjugate_angle" in doc["min_ecc"]
        assert "diagonal_angle" in doc["min_ecc"]


class TestVerify:
    def test_t2_all_pass_on_example(self, capsys, example_file):
        code, doc = run_json(capsys, ["verify", "--theorem", "t2",
                                      "--trials", "50", "--seed", "7",
                                      example_file])
        assert code == 0
        assert doc["passes"] == 50
        assert doc["worst_margin"] < 1e-9

    def test_t1_fails_on_non_mdq(self, capsys, tmp_path):
        path = tmp_path / "generic.json"
        path.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [2, 3], [1, 0]]}))
        code, doc = run_json(capsys, ["verify", "--theorem", "t1",
                                      "--trials", "20", "--seed", "3", str(path)])
        assert doc["passes"] == 0
        assert all(t["margin"] > 1e-6 for t in doc["per_trial"])

    def test_t3_on_example(self, capsys, example_file):
        code, doc = run_json(capsys, ["verify", "--theorem", "t3",
                                      "--trials", "5", "--seed", "1",
                                      example_file])
        assert doc["passes"] == 5

    def test_deterministic(self, capsys, example_file):
        _, doc1 = run_json(capsys, ["verify", "--theorem", "t2", "--trials",
                                    "10", "--seed", "5", example_file])
        _, doc2 = run_json(capsys, ["verify", "--theorem", "t2", "--trials",
                                    "10", "--seed", "5", example_file])
        assert doc1 == doc2


class TestPlot:
    def test_example_elements(self, tmp_path, example_file):
        out = tmp_path / "fig.svg"
        code = main(["plot", "--params", f"{3/7},{EXAMPLE_R_STAR}",
                     "--out", str(out), example_file])
        assert code == 0
        svg = out.read_text()
        assert svg.count('class="ellipse"') == 2
        assert svg.count('class="tangency"') == 8
        assert svg.count('class="diagonal"') == 2
        assert svg.count('class="newton"') == 1
        assert svg.count('class="diameter"') == 2

    def test_square_incircle_plot(self, tmp_path, square_file):
        out = tmp_path / "sq.svg"
        code = main(["plot", "--params", "0.0", "--out", str(out), square_file])
        assert code == 0
        svg = out.read_text()
        assert svg.count('class="ellipse"') == 1

    def test_empty_params(self, tmp_path, example_file):
        out = tmp_path / "bare.svg"
        assert main(["plot", "--params", "", "--out", str(out),
                     example_file]) == 0
        svg = out.read_text()
        assert svg.count('class="ellipse"') == 0
        assert svg.count('class="diagonal"') == 2

    def test_unwritable_exit_5(self, example_file):
        assert main(["plot", "--params", "0.5",
                     "--out", "/nonexistent-dir/x.svg", example_file]) == 5
