import json
import subprocess
import sys

import pytest

from multideal.asymptotic import GradedFamily
from multideal.cli import main
from multideal.ideals import MonomialIdeal
from multideal.multiplier import SncDivisor
from multideal.reports import VerificationReport
from multideal.volume import fujita_approximation, verify_certificate


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def doc(out):
    return json.loads(out)


SQUARE = {"vars": 2, "gens": [[2, 0], [1, 1], [0, 2]]}
POLY = {"vars": 2, "kind": "polytope", "inequalities": [{"normal": [1, 2], "offset": "2"}]}
TABLE = {"vars": 2, "kind": "table", "members": [SQUARE, [[4, 0], [1, 1], [0, 4]]]}


class TestIdealVerbs:
    def test_ideal_half(self, capsys, files):
        code, out, _ = run(capsys, "ideal", "-i", files("a.json", SQUARE), "--c", "1/2")
        assert code == 0
        d = doc(out)
        assert d["verb"] == "ideal"
        assert d["result"]["gens"] == [[0, 0]]
        assert MonomialIdeal.from_json(d["result"]).is_unit()
        assert d["config"]["c"] == "1/2"

    def test_ideal_one(self, capsys, files):
        _, out, _ = run(capsys, "ideal", "-i", files("a.json", SQUARE))
        assert doc(out)["result"]["gens"] == [[0, 1], [1, 0]]

    def test_text_mode(self, capsys, files):
        code, out, _ = run(capsys, "ideal", "-i", files("a.json", SQUARE), "--text")
        assert code == 0 and out.startswith("J(")

    def test_divisor(self, capsys, files):
        D = {"coeffs": ["3/2", "2/3"], "principal": {"exp": [0, 1], "weight": "1/2"}}
        _, out, _ = run(capsys, "divisor", "-i", files("d.json", D))
        res = doc(out)
        assert res["result"]["gens"] == [[1, 1]]
        assert SncDivisor.from_json(res["config"]["divisor"]) == SncDivisor.from_json(D)

    def test_mixed(self, capsys, files):
        a = files("a.json", {"vars": 2, "gens": [[1, 0]]})
        b = files("b.json", {"vars": 2, "gens": [[0, 1]]})
        _, out, _ = run(capsys, "mixed", "-i", a, "-j", b, "--c", "3/2", "--d", "5/2")
        assert doc(out)["result"]["gens"] == [[1, 2]]

    def test_lct(self, capsys, files):
        _, out, _ = run(capsys, "lct", "-i", files("m.json", {"vars": 2, "gens": [[1, 0], [0, 1]]}))
        assert doc(out)["result"]["lct"] == "2"
        _, out, _ = run(capsys, "lct", "-i", files("u.json", {"vars": 2, "gens": [[0, 0]]}))
        assert doc(out)["result"]["lct"] == "inf"


class TestFamilyVerbs:
    def test_asym(self, capsys, files):
        code, out, _ = run(capsys, "asym", "-i", files("f.json", POLY), "--c", "2")
        d = doc(out)
        assert code == 0 and d["result"]["certified"]
        assert GradedFamily.from_json(d["config"]["family"]) == GradedFamily.from_json(POLY)

    def test_asym_uncertified_warns(self, capsys, files):
        code, out, err = run(capsys, "asym", "-i", files("t.json", TABLE), "--kmax", "2")
        assert code == 0 and "warning" in err
        assert doc(out)["result"]["certified"] is False

    def test_volume(self, capsys, files):
        _, out, _ = run(capsys, "volume", "-i", files("f.json", POLY), "--kmax", "4")
        res = doc(out)["result"]
        assert res["exact_limit"] == "2"
        assert [e["normalized"] for e in res["sequence"]] == ["4", "3", "8/3", "5/2"]

    def test_volume_text(self, capsys, files):
        _, out, _ = run(capsys, "volume", "-i", files("f.json", POLY), "--kmax", "3", "--text")
        assert "exact limit: 2" in out

    def test_fujita_round_trip(self, capsys, files):
        _, out, _ = run(capsys, "fujita", "-i", files("t.json", TABLE), "--eps", "1/10")
        res = doc(out)["result"]
        assert res["p"] == 2 and res["gap"] == "0" and res["reached"]
        cert = fujita_approximation(GradedFamily.from_json(res["family"]), "1/10")
        assert cert.to_json() == {k: v for k, v in res.items() if k != "reached"}
        assert verify_certificate(cert)

    def test_fujita_not_reached(self, capsys, files):
        F = {"vars": 2, "kind": "polytope", "inequalities": [{"normal": [2, 3], "offset": "7"}]}
        code, out, err = run(capsys, "fujita", "-i", files("f.json", F), "--eps", "1/1000000", "--kmax", "2")
        assert code == 0 and "warning" in err
        assert doc(out)["result"]["reached"] is False


class TestVerify:
    def test_subadd_seed7(self, capsys):
        code, out, _ = run(capsys, "verify", "subadd", "--vars", "2", "--max-exp", "4", "--trials", "1000", "--seed", "7")
        d = doc(out)
        assert code == 0
        assert d["result"]["status"] == "PASS" and d["result"]["trials"] == 1000
        rep = d["result"]
        assert VerificationReport(**{k: rep[k] for k in ("check", "trials", "violations", "seed", "params", "vacuous", "inconclusive")}).to_json() == rep

    def test_text_and_timing(self, capsys):
        _, out, _ = run(capsys, "verify", "restrict", "--trials", "20", "--text")
        assert out.startswith("restrict: PASS")
        _, out, _ = run(capsys, "verify", "restrict", "--trials", "20", "--timing")
        assert "elapsed" in doc(out)["result"]

    def test_exhaustive_only_subadd(self, capsys):
        code, _, err = run(capsys, "verify", "product", "--exhaustive")
        assert code == 2 and "only available" in err

    def test_exhaustive_small(self, capsys):
        code, out, _ = run(capsys, "verify", "subadd", "--exhaustive", "--max-exp", "1", "--max-gens", "2")
        assert code == 0 and doc(out)["result"]["params"]["exhaustive"] is True

    def test_violation_exit_code(self, capsys, monkeypatch):
        import multideal.cli as cli

        def fake(*args, **kwargs):
            return VerificationReport("subadd", 1, [{"check": "subadd", "inputs": {}}], 0)

        monkeypatch.setattr(cli, "run_campaign", fake)
        code, out, _ = run(capsys, "verify", "subadd", "--trials", "1")
        assert code == 1 and doc(out)["result"]["status"] == "FAIL"


class TestErrors:
    def test_zero_ideal(self, capsys, files):
        code, out, err = run(capsys, "ideal", "-i", files("zero.json", {"vars": 2, "gens": []}))
        assert code == 2 and out == ""
        assert "gens must be nonempty" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ["bogus"],
            [],
            ["ideal"],
            ["verify", "nope"],
            ["verify", "subadd", "--trials", "x"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and "usage error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "ideal", "-i", str(tmp_path / "none.json"))
        assert code == 2 and "cannot read" in err

    def test_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        code, _, err = run(capsys, "ideal", "-i", str(p))
        assert code == 2 and "malformed JSON" in err

    @pytest.mark.parametrize("c", ["0", "-1", "1/0", "abc"])
    def test_bad_weight(self, capsys, files, c):
        code, _, err = run(capsys, "ideal", "-i", files("a.json", SQUARE), "--c", c)
        assert code == 2 and err.startswith("error:")

    def test_dimension_mismatch(self, capsys, files):
        a = files("a.json", SQUARE)
        b = files("b.json", {"vars": 3, "gens": [[1, 0, 0]]})
        code, _, err = run(capsys, "mixed", "-i", a, "-j", b)
        assert code == 2 and "dimension mismatch" in err

    def test_bad_family(self, capsys, files):
        code, _, err = run(capsys, "volume", "-i", files("f.json", {"vars": 2, "kind": "blob"}))
        assert code == 2 and "kind" in err

    def test_non_primary_volume(self, capsys, files):
        F = {"vars": 2, "kind": "powers", "ideal": {"vars": 2, "gens": [[1, 0]]}}
        code, _, err = run(capsys, "volume", "-i", files("f.json", F))
        assert code == 2 and "not primary" in err


def test_byte_identical_across_workers():
    argv = [sys.executable, "-m", "multideal", "verify", "diagonal", "--trials", "40", "--seed", "3"]
    outs = []
    for workers in ("1", "2"):
        proc = subprocess.run(argv + ["--workers", workers], capture_output=True, env={"MI_WORKERS": "2", "PATH": ""}, check=False)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]

