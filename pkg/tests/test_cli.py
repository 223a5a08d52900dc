"""End-to-end CLI behaviour: output shapes, exit codes, precedence."""

import json

import pytest

from superder.cli import ENV_SEED, run_command


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_SEED, raising=False)


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBracket:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "bracket", "--algebra", "svir0",
                           "G[1]", "G[-1]")
        assert code == 0
        assert out == "2*L[0] + 1/4*C\n"

    def test_default_algebra_is_vir(self, capsys):
        code, out, _ = run(capsys, "bracket", "L[2]", "L[-2]")
        assert code == 0
        assert out == "4*L[0] + 1/2*C\n"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "bracket", "--json", "--algebra", "svir0",
                           "G[1]", "G[-1]")
        assert code == 0
        assert json.loads(out) == {
            "algebra": "svir0",
            "x": "G[1]",
            "y": "G[-1]",
            "result": "2*L[0] + 1/4*C",
        }


class TestJacobi:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "jacobi", "--bound", "1")
        assert code == 0
        assert out == "0 violations / 64 triples\n"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "jacobi", "--json", "--bound", "1",
                           "--algebra", "svir12")
        assert code == 0
        payload = json.loads(out)
        assert payload["algebra"] == "svir12"
        assert payload["bound"] == 1
        assert payload["violations"] == 0
        assert payload["verdict"] == "pass"
        assert payload["triples"] == 6 ** 3


class TestDefect:
    def test_outer_derivation_has_no_defect(self, capsys):
        code, out, _ = run(capsys, "defect", "--algebra", "sw22",
                           "D", "L[2]", "I[-1]")
        assert code == 0
        assert out == "0\n"

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "defect", "--json", "--algebra", "svir0",
                           "ad(G[1])", "G[0]", "G[2]")
        assert code == 0
        payload = json.loads(out)
        assert payload["derivation"] == "ad(G[1])"
        assert payload["zero"] is True
        assert payload["defect"] == "0"


class TestAnnihilate:
    def test_default_bound_rule(self, capsys):
        code, out, _ = run(capsys, "annihilate", "--algebra", "svir0", "G[2]")
        assert code == 0
        assert out == "dimension 1\nad(L[4])\n"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "annihilate", "--json", "--algebra", "svir0",
                           "G[2]")
        assert json.loads(out) == {
            "algebra": "svir0",
            "target": "G[2]",
            "bound": 6,
            "dimension": 1,
            "basis": ["ad(L[4])"],
        }

    def test_explicit_bound(self, capsys):
        code, out, _ = run(capsys, "annihilate", "--json", "--algebra", "sw22",
                           "G[1]", "--bound", "4")
        payload = json.loads(out)
        assert payload["dimension"] == 3
        assert payload["basis"] == ["ad(L[2])", "ad(I[2])", "D"]


class TestGlobalize:
    HONEST = ["globalize", "--algebra", "sw22",
              "--oracle", "honest:ad(I[2]) + 3*D",
              "--bound", "2", "--random", "5"]

    def test_honest_pass(self, capsys):
        code, out, _ = run(capsys, *self.HONEST, "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "pass"
        assert payload["mu"] == "3"
        assert payload["candidate"] == {"inner": "I[2]", "lambda": "3"}
        assert payload["failure_witness"] is None

    def test_adversarial_fail(self, capsys):
        code, out, _ = run(capsys, "globalize", "--algebra", "svir0",
                           "--oracle", "adversarial:shift_map",
                           "--bound", "2", "--random", "5", "--seed", "0")
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] == "fail"
        assert payload["failure_witness"] is not None

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, *self.HONEST, "--seed", "7")
        _, second, _ = run(capsys, *self.HONEST, "--seed", "7")
        assert first == second

    def test_seed_precedence(self, capsys, monkeypatch):
        _, seed5, _ = run(capsys, *self.HONEST, "--seed", "5")
        _, seed9, _ = run(capsys, *self.HONEST, "--seed", "9")
        assert seed5 != seed9
        monkeypatch.setenv(ENV_SEED, "5")
        _, from_env, _ = run(capsys, *self.HONEST)
        assert from_env == seed5
        _, flag_beats_env, _ = run(capsys, *self.HONEST, "--seed", "9")
        assert flag_beats_env == seed9


class TestConfig:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        path = tmp_path / "conf.json"
        path.write_text(json.dumps({"algebra": "sw22", "bound": 1, "seed": 3}))
        code, out, _ = run(capsys, "annihilate", "--json", "G[1]",
                           "--config", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["algebra"] == "sw22"
        assert payload["bound"] == 1
        assert payload["basis"] == ["D"]

    def test_explicit_algebra_beats_config(self, capsys, tmp_path):
        path = tmp_path / "conf.json"
        path.write_text(json.dumps({"algebra": "sw22", "bound": 1}))
        code, out, _ = run(capsys, "annihilate", "--json", "--algebra", "svir0",
                           "G[2]", "--config", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["algebra"] == "svir0"
        assert payload["dimension"] == 0

    def test_config_seed_matches_explicit_seed(self, capsys, tmp_path):
        path = tmp_path / "conf.json"
        path.write_text(json.dumps({"seed": 3}))
        argv = TestGlobalize.HONEST
        _, explicit, _ = run(capsys, *argv, "--seed", "3")
        _, from_config, _ = run(capsys, *argv, "--config", str(path))
        assert from_config == explicit


class TestErrors:
    def test_parse_error_json_diagnostic(self, capsys):
        code, out, _ = run(capsys, "bracket", "--json", "L[2", "L[0]")
        assert code == 2
        payload = json.loads(out)
        assert payload["error"]["type"] == "ParseError"
        assert payload["error"]["position"] == 3

    def test_parse_error_text_goes_to_stderr(self, capsys):
        code, out, err = run(capsys, "bracket", "L[2", "L[0]")
        assert code == 2
        assert out == ""
        assert err.startswith("error: ParseError (position 3):")

    def test_kind_outside_family(self, capsys):
        code, out, _ = run(capsys, "bracket", "--json", "--algebra", "svir0",
                           "Q[0]", "L[0]")
        assert code == 2
        payload = json.loads(out)
        assert payload["error"]["type"] == "KindNotInFamilyError"
        assert payload["error"]["position"] == 0

    def test_zero_annihilator_target(self, capsys):
        code, _, err = run(capsys, "annihilate", "0")
        assert code == 2
        assert "ZeroTargetError" in err

    def test_globalize_needs_odd_generators(self, capsys):
        code, _, err = run(capsys, "globalize", "--oracle", "honest:ad(L[1])")
        assert code == 2
        assert "UnsupportedFamilyError" in err

    @pytest.mark.parametrize("spec", ["honest", "adversarial:nope", "x:y"])
    def test_bad_oracle_spec(self, capsys, spec):
        code, _, err = run(capsys, "globalize", "--algebra", "svir0",
                           "--oracle", spec)
        assert code == 2
        assert "error:" in err

    def test_missing_config_file(self, capsys):
        code, _, err = run(capsys, "jacobi", "--config", "/no/such/file.json")
        assert code == 2
        assert "error:" in err

    def test_config_must_be_an_object(self, capsys, tmp_path):
        path = tmp_path / "conf.json"
        path.write_text("[1, 2]")
        code, _, err = run(capsys, "jacobi", "--config", str(path))
        assert code == 2
        assert "error:" in err

    def test_argparse_usage_errors(self, capsys):
        assert run(capsys, "bracket", "L[0]")[0] == 2
        assert run(capsys, "lemma", "bogus")[0] == 2
        assert run(capsys)[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0


class TestLemma:
    def test_json_report_shape(self, capsys):
        code, out, _ = run(capsys, "lemma", "lemma3.3", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["name"] == "lemma3.3"
        assert payload["verdict"] == "pass"
        assert tuple(payload["cases"][0])[:3] == ("i", "dim", "pass")
        assert all(case["pass"] for case in payload["cases"])

    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "lemma", "lemma4.4i")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "verdict: pass"
        assert all(line.startswith("lemma4.4i:") for line in lines[:-1])
        assert all(line.endswith("-> ok") for line in lines[:-1])
