import json
import shutil
import subprocess
import sys

import pytest

import psu3.modules
from psu3.cli import main
from psu3.forms import e, form_to_json, hodge
from psu3.holonomy import family, so3_three_form
from psu3.modules import module_basis, rho, sigma_plus
from psu3.scalar import Scalar


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_verify_all_filtered(capsys):
    code, doc = run_json(capsys, "verify-all", "--only", "lemma:sigma")
    assert code == 0 and doc["status"] == "pass"
    assert len(doc["checks"]) == 6
    assert doc["inputs"] == {"budget": None, "only": "lemma:sigma", "seed": 0}


def test_verify_all_text(capsys):
    code, out = run(capsys, "verify-all", "--only", "core:rho")
    assert code == 0
    assert out.splitlines()[-1].startswith("verify-all: pass")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-2])


def test_tampered_rho_is_caught(capsys, monkeypatch):
    original = psu3.modules.rho

    def tampered():
        return original() + e(1, 2, 3)

    monkeypatch.setattr(psu3.modules, "rho", tampered)
    code, doc = run_json(capsys, "verify-all", "--only", "core:rho")
    assert code == 1 and doc["status"] == "fail"
    assert any(not c["ok"] for c in doc["checks"])


def test_json_is_byte_stable(capsys):
    _, a = run(capsys, "holonomy", "--case", "so3_a", "--params", "a=1", "--json")
    _, b = run(capsys, "holonomy", "--case", "so3_a", "--params", "a=1", "--json")
    assert a == b


def test_decompose(capsys, tmp_path):
    path = write(tmp_path, "a.json", form_to_json(e(1, 4, 5)))
    code, doc = run_json(capsys, "decompose", "--degree", "3", "--in", path)
    assert code == 0
    assert sorted(doc["artifacts"]["components"]) == ["L3_1", "L3_27"]
    assert doc["inputs"]["form"] == form_to_json(e(1, 4, 5))


def test_decompose_degree_mismatch(capsys, tmp_path):
    path = write(tmp_path, "a.json", form_to_json(e(1, 4, 5)))
    code, doc = run_json(capsys, "decompose", "--degree", "2", "--in", path)
    assert code == 2 and "expected a 2-form" in doc["error"]


def test_classify(capsys, tmp_path):
    path = write(tmp_path, "t.json", form_to_json(so3_three_form()))
    code, doc = run_json(capsys, "classify", "--torsion", path)
    assert code == 0 and doc["artifacts"]["class"] == "W3"
    code, doc = run_json(capsys, "classify")
    assert code == 0 and doc["artifacts"]["class"] == "integrable"


def test_classify_rejects_non_characteristic_torsion(capsys, tmp_path):
    path = write(tmp_path, "t.json", form_to_json(rho()))
    code, doc = run_json(capsys, "classify", "--torsion", path)
    assert code == 1
    assert [c["name"] for c in doc["checks"] if not c["ok"]] == ["inputs:characteristic-torsion"]


def test_from_derivatives(capsys, tmp_path):
    t = so3_three_form()
    d = write(tmp_path, "d.json", form_to_json(sigma_plus(t)))
    z = write(tmp_path, "z.json", {"degree": 2, "terms": []})
    code, doc = run_json(capsys, "from-derivatives", "--drho", d, "--delta-rho", z)
    assert code == 0 and doc["artifacts"]["class"] == "W3"
    assert doc["artifacts"]["char_forms"]["T27"] == form_to_json(t)
    bad = write(tmp_path, "b.json", form_to_json(module_basis("L4_8s")[0]))
    code, doc = run_json(capsys, "from-derivatives", "--drho", bad, "--delta-rho", z)
    assert code == 1 and "not realizable" in doc["artifacts"]["reason"]


def test_holonomy_so3(capsys):
    code, doc = run_json(capsys, "holonomy", "--case", "so3_a", "--params", "a=1")
    assert code == 0
    art = doc["artifacts"]
    assert art["ricci_diagonal"] == [Scalar(3 * d).render() for d in (49, 33, 33, 49, 49, 33, 33, 33)]
    assert art["lie_algebra"]["killing_negative_definite"] is True
    assert art["class"] == "W3"


def test_holonomy_sqrt3_param(capsys):
    code, doc = run_json(capsys, "holonomy", "--case", "r_suc2", "--params", "a1=1,a2=sqrt3")
    assert code == 0
    assert doc["artifacts"]["spin7"]["lcp"] is False


def test_holonomy_constraint_violation(capsys):
    code, doc = run_json(capsys, "holonomy", "--case", "r_suc2", "--params", "a1=0,a2=1")
    assert code == 1 and "5a1^2+3a1a2" in doc["artifacts"]["violated"]


@pytest.mark.parametrize("params", ["a1", "a1=x", "zz=1"])
def test_holonomy_bad_params(capsys, params):
    code, doc = run_json(capsys, "holonomy", "--case", "r_suc2", "--params", params)
    assert code == 2 and doc["status"] == "error"


def test_residual_and_ricci(capsys, tmp_path):
    fam = family("so3_a", {"a": 1})
    R = write(tmp_path, "r.json", fam.curvature.to_json())
    T = write(tmp_path, "t.json", form_to_json(fam.T))
    code, doc = run_json(capsys, "residual", "--curvature", R, "--torsion", T)
    assert code == 0 and doc["artifacts"]["residual"] == Scalar(0).render()
    code, doc = run_json(capsys, "residual", "--curvature", R)
    assert code == 1
    code, doc = run_json(capsys, "ricci", "--curvature", R, "--torsion", T)
    assert code == 0
    assert doc["artifacts"]["ricci"][0][0] == Scalar(147).render()


def test_bad_inputs(capsys, tmp_path):
    bad_idx = write(tmp_path, "bad.json", {"degree": 3, "terms": [{"idx": [2, 1, 3], "a": "1"}]})
    code, doc = run_json(capsys, "decompose", "--degree", "3", "--in", bad_idx)
    assert code == 2 and "terms[0]" in doc["error"]
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    code, doc = run_json(capsys, "classify", "--torsion", str(junk))
    assert code == 2 and "invalid JSON" in doc["error"]
    code, doc = run_json(capsys, "residual", "--curvature", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in doc["error"]


def test_invariants(capsys):
    code, doc = run_json(capsys, "invariants", "--algebra", "psu3", "--space", "char3")
    assert code == 0 and doc["artifacts"]["dim"] == 0
    code, doc = run_json(capsys, "invariants", "--algebra", "so3", "--space", "char4")
    assert doc["artifacts"]["dim"] == 1
    code, doc = run_json(capsys, "invariants", "--algebra", "g2")
    assert code == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["holonomy", "--case", "nope"])
    assert exc.value.code == 2


def test_bad_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("PSU3_CHECK_BUDGET", "-3")
    assert main(["verify-all", "--only", "core:rho"]) == 2


def test_console_script():
    exe = shutil.which("psu3")
    cmd = [exe] if exe else [sys.executable, "-m", "psu3.cli"]
    proc = subprocess.run(cmd + ["verify-all", "--only", "lemma:ten"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "verify-all: pass" in proc.stdout


def test_decompose_rho_and_omega(capsys, tmp_path):
    from psu3.modules import omega

    path = write(tmp_path, "r.json", form_to_json(rho()))
    code, doc = run_json(capsys, "decompose", "--degree", "3", "--in", path)
    assert code == 0 and doc["artifacts"]["nonzero"] == "L3_1"
    path = write(tmp_path, "w.json", form_to_json(omega(1)))
    code, doc = run_json(capsys, "decompose", "--degree", "2", "--in", path)
    assert code == 0 and doc["artifacts"]["nonzero"] == "L2_8"


def test_from_derivatives_zero(capsys, tmp_path):
    d = write(tmp_path, "d.json", {"degree": 4, "terms": []})
    z = write(tmp_path, "z.json", {"degree": 2, "terms": []})
    code, doc = run_json(capsys, "from-derivatives", "--drho", d, "--delta-rho", z)
    assert code == 0 and doc["artifacts"]["note"] == "integrable"
    assert all(f["terms"] == [] for f in doc["artifacts"]["char_forms"].values())
