import io
import json

import pytest

from qna import catalog
from qna.cli import FAILED, INCONCLUSIVE, MALFORMED, OK, main
from qna.deriv import inner
from qna.io import derivation_to_json, presentation_from_json, presentation_to_json
from qna.scalars import Q


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    out = {n: write(n + ".json", presentation_to_json(catalog.get(n).presentation)) for n in catalog.names()}
    out["write"] = write
    return out


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_roundtrip(name, capsys):
    code, doc = run(["catalog", name], capsys)
    assert code == OK
    assert presentation_from_json(doc) == catalog.get(name).presentation


def test_catalog_expected(capsys):
    code, doc = run(["catalog", "uq_plus_sl3", "--expected"], capsys)
    assert code == OK and doc["expected"]["ell"]["value"] == 1


def test_catalog_unknown(capsys):
    code, doc = run(["catalog", "nope"], capsys)
    assert code == MALFORMED and doc["exit_code"] == MALFORMED


def test_validate(files, capsys):
    code, doc = run(["validate", files["uq_plus_sl3"]], capsys)
    assert code == OK and doc["validation"]["valid"]
    assert doc["format"] == 1 and doc["command"] == "validate"


def test_validate_failure(files, capsys):
    data = presentation_to_json(catalog.get("quantum_plane").presentation)
    data["weights"] = [[1, 0], [1, 0]]
    code, doc = run(["validate", files["write"]("bad.json", data)], capsys)
    assert code == FAILED
    checks = {f["check"] for f in doc["validation"]["failures"]}
    assert "weights_independent" in checks or "rank" in checks


def test_malformed_inputs(tmp_path, capsys):
    code, doc = run(["validate", str(tmp_path / "missing.json")], capsys)
    assert code == MALFORMED
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", str(bad)], capsys)[0] == MALFORMED
    bad.write_text(json.dumps({"N": 2}))
    assert run(["validate", str(bad)], capsys)[0] == MALFORMED


def test_y_elements(files, capsys):
    code, doc = run(["y-elements", files["uq_plus_so5"]], capsys)
    assert code == OK
    assert doc["gy"]["s"] == [3, 4, None, None]
    assert doc["gy"]["null_means"] == {"p": "-infinity", "s": "+infinity"}


def test_center(files, capsys):
    code, doc = run(["center", files["affine_rank1_center"]], capsys)
    assert code == OK
    assert doc["torus_center_rank"] == 1 and doc["affine_center_rank"] == 0
    assert "center" not in doc
    code, doc = run(["center", files["uq_plus_sl3"]], capsys)
    assert doc["center"]["ell"] == 1


def test_hypothesis_codes(files, capsys):
    assert run(["hypothesis", files["uq_plus_so5"]], capsys)[0] == OK
    code, doc = run(["hypothesis", files["affine_rank1_center"]], capsys)
    assert code == FAILED and doc["hypothesis"]["failure_reason"] == "NoNonnegativeBasis"


def test_hh1(files, capsys):
    code, doc = run(["hh1", files["uq_plus_sl3"]], capsys)
    assert code == OK and doc["rank"] == 2 and doc["weight_basis"] == [1, 3]
    code, doc = run(["hh1", files["central_x"]], capsys)
    assert code == FAILED and "central generator" in doc["reason"]


def test_decompose(files, capsys):
    P = catalog.get("uq_plus_sl3").presentation
    x1, x2, x3 = P.gens()
    dfile = files["write"]("d.json", derivation_to_json(inner(P, x1 * x3)))
    code, doc = run(["decompose", files["uq_plus_sl3"], dfile], capsys)
    assert code == OK and doc["decomposition"]["status"] == "exact"
    code, doc = run(["--degree-bound", "1", "decompose", files["uq_plus_sl3"], dfile], capsys)
    assert code == INCONCLUSIVE
    assert doc["decomposition"]["status"] == {"inconclusive_at": 1}


def test_nf(files, capsys):
    code, doc = run(["nf", files["quantum_plane"], files["write"]("w.json", {"word": [2, 1]})], capsys)
    assert code == OK
    # x2 x1 = q x1 x2
    assert doc["normal_forms"][0]["value"] == [{"coeff": Q.to_json(), "exps": [1, 1]}]


def test_decompose_refused(files, capsys):
    e = catalog.get("affine_hh1_rank4")
    dfile = files["write"]("d.json", e.expected["extra_derivation"]["value"])
    code, doc = run(["decompose", files["affine_hh1_rank4"], dfile], capsys)
    assert code == FAILED and doc["reason"] == "hypothesis certificate invalid"


def test_nf_bad_letter(files, capsys):
    code, _ = run(["nf", files["quantum_plane"], files["write"]("w.json", {"word": [3]})], capsys)
    assert code == MALFORMED


def test_stdin_and_json_output(files, tmp_path, capsys, monkeypatch):
    text = open(files["uq_plus_sl3"]).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    out = tmp_path / "report.json"
    assert main(["--json", str(out), "hh1", "-"]) == OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["rank"] == 2


def test_deterministic(files, capsys):
    a = run(["center", files["uq_plus_so5"]], capsys)
    b = run(["center", files["uq_plus_so5"]], capsys)
    assert a == b


def test_bad_flag_value(files):
    with pytest.raises(SystemExit):
        main(["--search-bound", "0", "hypothesis", files["uq_plus_sl3"]])
