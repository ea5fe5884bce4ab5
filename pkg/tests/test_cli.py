import csv
import io
import json

import pytest

from mogir import analytics, cli, policy
from mogir.policy import Strategy

SMALL = """
[sim]
horizon = 600
burn_in = 100
n_paths = 40
seed = 1
"""

QUIET = SMALL + """
[params]
sigma_x = 0.0
sigma_pi = 0.0
sigma_y = 0.0
"""


@pytest.fixture
def small(tmp_path):
    path = tmp_path / "small.toml"
    path.write_text(SMALL)
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "analyze")
        assert code == 0
        assert "PureStabilization" in out and "StrictInflationTargeting" in out

    def test_json_shared_output_coefficient(self, capsys):
        code, out, _ = run(capsys, "analyze", "--format", "json")
        data = json.loads(out)
        c_x = {s["rule"]["c_x"] for s in data["strategies"].values()}
        assert code == 0 and c_x == {1.6}
        assert data["time_inconsistency"]["closed_form"] == pytest.approx(1.38888888889, abs=1e-11)

    def test_json_matches_table_precision(self, capsys):
        _, table, _ = run(capsys, "analyze")
        _, raw, _ = run(capsys, "analyze", "--format", "json")
        data = json.loads(raw)
        for body in data["strategies"].values():
            for v in body["rule"].values():
                if isinstance(v, float):
                    assert f"{v:.6g}" in table

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "analyze", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["strategy", "section", "quantity", "value"]
        assert "\r" not in out

    def test_invalid_lambda(self, capsys, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("[params]\nlambda = 1.2\n")
        code, _, err = run(capsys, "analyze", "--config", str(path))
        assert code == 2 and "SlopeOutOfRange" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        code, out, _ = run(capsys, "analyze", "--format", "json", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["command"] == "analyze"


class TestSimulate:
    def test_seed_repeats_bytes(self, capsys, small):
        a = run(capsys, "simulate", "--config", small, "--seed", "42")
        b = run(capsys, "simulate", "--config", small, "--seed", "42")
        c = run(capsys, "simulate", "--config", small, "--seed", "43")
        assert a == b and a[1] != c[1]

    def test_thread_settings_do_not_change_output(self, capsys, small, monkeypatch):
        outs = []
        for n in ("1", "2", "5", "0"):
            monkeypatch.setenv("MOGIR_SIM_THREADS", n)
            outs.append(run(capsys, "simulate", "--config", small, "--format", "csv", "--strategy", "stab"))
        assert all(o == outs[0] for o in outs)

    def test_moments_unflagged(self, capsys, small):
        code, out, _ = run(capsys, "simulate", "--config", small, "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["se_method"] == "between-path"
        assert all(m["flag"] == "" for m in data["moments"].values())
        assert data["moments"]["var_pi"]["analytic"] == pytest.approx(1.09e-4)

    def test_dump_paths_quiet(self, capsys, tmp_path):
        path = tmp_path / "quiet.toml"
        path.write_text(QUIET)
        code, out, _ = run(capsys, "simulate", "--config", str(path), "--dump-paths")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and rows[0] == ["t", "x", "pi", "y_pot", "y", "i"]
        assert len(rows) == 1 + 601
        for row in rows[1:]:
            assert float(row[1]) == 0.0
            assert float(row[2]) == pytest.approx(0.02, abs=1e-15)
            assert float(row[5]) == pytest.approx(0.04, abs=1e-15)

    def test_dump_paths_first_path_of_full_run(self, capsys, small):
        from mogir.config import load_run_config
        from mogir.simulation import simulate

        _, out, _ = run(capsys, "simulate", "--config", small, "--dump-paths")
        cfg = load_run_config(small)
        res = simulate(cfg.params, policy.inflation_targeting_rule(cfg.params), cfg.sim)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert [float(r[2]) for r in rows[:50]] == pytest.approx(list(res.pi[0, :50]), rel=1e-11)

    def test_seed_accepts_hex(self, capsys, small):
        assert run(capsys, "simulate", "--config", small, "--seed", "0x2a") == run(
            capsys, "simulate", "--config", small, "--seed", "42"
        )

    def test_bad_thread_setting(self, capsys, small, monkeypatch):
        monkeypatch.setenv("MOGIR_SIM_THREADS", "lots")
        code, _, err = run(capsys, "simulate", "--config", small)
        assert code == 2 and "BadThreadCount" in err


class TestCompare:
    def test_table(self, capsys, small):
        code, out, _ = run(capsys, "compare", "--config", small)
        assert code == 0
        assert "Long-run growth ranking: StrictInflationTargeting >" in out
        for title in ("Table 1", "Table 2", "Table 3"):
            assert title in out

    def test_csv_one_row_per_pair(self, capsys, small):
        _, out, _ = run(capsys, "compare", "--config", small, "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        pairs = [(r["strategy"], r["statistic"]) for r in rows]
        assert len(pairs) == len(set(pairs)) == 3 * 6
        assert {s for s, _ in pairs} == {s.value for s in Strategy}

    def test_strict_passes_when_clean(self, capsys, small):
        code, _, _ = run(capsys, "compare", "--config", small, "--strict")
        assert code == 0

    def test_strict_with_sabotaged_formula(self, capsys, small, monkeypatch):
        real = analytics.longrun_moments

        def wrong(p, strategy):
            lr = real(p, strategy)
            return type(lr)(lr.mean_pi + 0.01, lr.mean_x, lr.var_pi, lr.mean_growth)

        monkeypatch.setattr(analytics, "longrun_moments", wrong)
        code, out, err = run(capsys, "compare", "--config", small, "--strict")
        assert code == 4 and "mean_pi" in err and "DISCREPANCY" in out
        code, _, _ = run(capsys, "compare", "--config", small)
        assert code == 0


class TestVerify:
    def test_default_passes(self, capsys, small):
        code, out, _ = run(capsys, "verify", "--config", small)
        assert code == 0 and "FAIL" not in out

    def test_filter(self, capsys, small):
        code, out, _ = run(capsys, "verify", "--config", small, "--checks", "fixed-point", "--format", "json")
        data = json.loads(out)
        assert code == 0 and [c["check"] for c in data["checks"]] == ["fixed-point"]

    def test_unknown_check(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["verify", "--checks", "everything"])
        assert err.value.code == 2

    def test_sabotaged_gamma_names_foc(self, capsys, small, monkeypatch):
        real = policy.growth_max_rule
        monkeypatch.setattr(policy, "growth_max_rule", lambda p: real(p.replace(gamma=1.01 * p.gamma)))
        code, _, err = run(capsys, "verify", "--config", small, "--checks", "foc")
        assert code == 5 and "foc" in err
