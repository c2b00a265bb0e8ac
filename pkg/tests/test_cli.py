import json

import numpy as np
import pytest

import holoalg as ha
from holoalg import fileio
from holoalg.cli import main

from conftest import cubic_example


@pytest.fixture()
def files(tmp_path, dual, split, t3, id_dual):
    def dump(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    cubic = cubic_example(dual, id_dual)
    out = {
        "dual": dump("dual.json", fileio.algebra_to_json(dual, "dual")),
        "split": dump("split.json", fileio.algebra_to_json(split, "split")),
        "t3": dump("t3.json", fileio.algebra_to_json(t3, "t3")),
        "cubic": dump("cubic.json", fileio.function_to_json(cubic)),
        "circle": dump("circle.json", fileio.path_to_json(ha.Path.circle(dual.zero(), 1.0))),
        "origin": dump("origin.json", fileio.element_to_json(dual.zero())),
        "one": dump("one.json", fileio.element_to_json(dual.unit())),
        "w": dump("w.json", fileio.element_to_json(dual.element([0.7, -0.3]))),
        "square_fn": dump("square_fn.json", fileio.function_to_json(
            ha.PowerSeries.polynomial(id_dual, dual.zero(),
                                      [dual.zero(), dual.unit(), dual.element([0, 1])]))),
    }
    bad_alpha = fileio.algebra_to_json(split, "bad")
    bad_alpha["alpha"][1][1][0] = [1.0, 0.0]
    bad_alpha["alpha"][0][1][0] = [0.5, 0.0]  # breaks the unit action: non-associative
    out["bad"] = dump("bad.json", bad_alpha)
    out["garbage"] = dump("garbage.json", {"dim": "x"})
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_human(files, capsys):
    code, out, _ = run(capsys, "validate", files["dual"])
    assert code == 0
    assert out.strip() == "commutative, associative, unit=(1, 0)"


def test_validate_json_round_trips(files, capsys, dual):
    code, out, _ = run(capsys, "validate", files["dual"], "--json")
    assert code == 0
    report = json.loads(out)
    assert report["commutative"] and report["associative"]
    assert report["unit"] == [[1.0, 0.0], [0.0, 0.0]]
    # the report re-parses under the algebra input schema
    back, name = fileio.algebra_from_json(report)
    assert name == "dual" and np.array_equal(back.alpha, dual.alpha)


def test_validate_rejects_corrupted_tensor(files, capsys):
    code, _, err = run(capsys, "validate", files["bad"])
    assert code == 2
    assert "NotAssociative" in err or "NotCommutative" in err


def test_schema_error_exit_code(files, capsys):
    code, _, err = run(capsys, "validate", files["garbage"])
    assert code == 1
    code, _, err = run(capsys, "validate", str(files["garbage"]) + ".missing")
    assert code == 1


def test_decompose_split(files, capsys, split):
    code, out, _ = run(capsys, "decompose", files["split"], "--json")
    assert code == 0
    report = json.loads(out)
    assert report["components"] == 2
    idems = {tuple(np.round([c[0] for c in e], 6)) for e in report["idempotents"]}
    assert idems == {(0.5, 0.5), (0.5, -0.5)}
    assert report["heights"] == [1, 1]
    # idempotents re-parse as element literals
    e = fileio.element_from_json(split, report["idempotents"][0])
    assert ((e * e) - e).coord_norm() < 1e-10


def test_decompose_t3(files, capsys):
    code, out, _ = run(capsys, "decompose", files["t3"], "--json")
    report = json.loads(out)
    assert report["components"] == 1
    assert report["heights"] == [3]
    assert report["widths"] == [[1, 1]]
    assert len(report["nilradical"]) == 2


def test_crgen_latex(files, capsys):
    code, out, _ = run(capsys, "crgen", files["dual"], "--format", "latex")
    assert code == 0
    assert r"\frac{\partial f^{1}}{\partial z^{2}} = 0" in out


def test_crgen_json(files, capsys):
    code, out, _ = run(capsys, "crgen", files["split"], "--json", "--scheffers")
    report = json.loads(out)
    assert report["equation_count"] == 2
    eq = report["equations"][0]
    assert (eq["i"], eq["j"]) == (1, 2)
    assert eq["coeffs"] == [[0.0, 0.0], [1.0, 0.0]]
    assert len(report["scheffers"]) == 8


def test_check_cubic(files, capsys):
    code, out, _ = run(capsys, "check", files["dual"], "--function", files["cubic"],
                       "--point", files["one"], "--step", "1e-4", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "holomorphic"
    assert report["gcru_residual"] < 1e-6
    deriv = np.array([c[0] + 1j * c[1] for c in report["derivative"]])
    assert np.abs(deriv - [1, 8]).max() < 1e-6


def test_index_human_line(files, capsys):
    code, out, _ = run(capsys, "index", "--algebra", files["dual"], "--path",
                       files["circle"], "--point", files["origin"])
    assert code == 0
    assert out.strip() == "Ind = 1 (spectral) / 1 (quadrature)"


def test_index_forbidden_point(files, capsys):
    code, _, err = run(capsys, "index", "--algebra", files["dual"], "--path",
                       files["circle"], "--point", files["one"])
    assert code == 2
    assert "NotAdmissible" in err


def test_cif_command(files, capsys):
    code, out, _ = run(capsys, "cif", "--algebra", files["dual"], "--function",
                       files["cubic"], "--path", files["circle"], "--point",
                       files["origin"], "--order", "3", "--json")
    assert code == 0
    report = json.loads(out)
    value = np.array([c[0] + 1j * c[1] for c in report["value"]])
    assert np.abs(value - [6, 12]).max() < 1e-8


def test_series_command(files, capsys):
    code, out, _ = run(capsys, "series", "--algebra", files["dual"], "--function",
                       files["cubic"], "--point", files["w"], "--json")
    assert code == 0
    report = json.loads(out)
    assert report["radius"] == "inf"
    assert "value" in report


def test_invert_command(files, capsys):
    code, out, _ = run(capsys, "invert", "--algebra", files["dual"], "--function",
                       files["square_fn"], "--value", files["w"], "--json")
    assert code == 0
    report = json.loads(out)
    assert report["residual"] < 1e-10


def test_identical_invocations_are_bit_identical(files, capsys):
    _, out1, _ = run(capsys, "decompose", files["split"], "--json")
    _, out2, _ = run(capsys, "decompose", files["split"], "--json")
    assert out1 == out2
    _, out3, _ = run(capsys, "index", "--algebra", files["dual"], "--path",
                     files["circle"], "--point", files["origin"], "--json")
    _, out4, _ = run(capsys, "index", "--algebra", files["dual"], "--path",
                     files["circle"], "--point", files["origin"], "--json")
    assert out3 == out4


def test_crgen_through_a_morphism_file(files, capsys, tmp_path, dual, cline, sigma_dual):
    cfile = tmp_path / "cline.json"
    cfile.write_text(json.dumps(fileio.algebra_to_json(cline, "C")))
    mfile = tmp_path / "sigma.json"
    mfile.write_text(json.dumps(fileio.morphism_to_json(sigma_dual, "dual", "C")))
    code, out, _ = run(capsys, "crgen", files["dual"], "--morphism", str(mfile),
                       "--target", str(cfile), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["equation_count"] == 1
    assert report["equations"][0]["coeffs"] == [[0.0, 0.0]]  # df^1/dz^2 = 0


def test_index_through_a_morphism_file(files, capsys, tmp_path, cline, sigma_dual):
    cfile = tmp_path / "cline.json"
    cfile.write_text(json.dumps(fileio.algebra_to_json(cline, "C")))
    mfile = tmp_path / "sigma.json"
    mfile.write_text(json.dumps(fileio.morphism_to_json(sigma_dual, "dual", "C")))
    code, out, _ = run(capsys, "index", "--algebra", files["dual"], "--path",
                       files["circle"], "--point", files["origin"], "--morphism",
                       str(mfile), "--target", str(cfile), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["spectral"] == [1]
    assert abs(report["quadrature"][0][0] - 1.0) < 1e-8


def test_unknown_flags_rejected(files):
    with pytest.raises(SystemExit):
        main(["validate", files["dual"], "--frobnicate"])
