import pytest
import json
import sys
import os

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src import runner
from src.config import load_config, parse_config
from src.exceptions import BasisSizeExceededError, HypothesisError
from src.runner import ScenarioRunner, run_config, run_scenario
# autopep8: on

SCENARIOS = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "scenarios"))


def scenario_path(name):
    return os.path.join(SCENARIOS, f"{name}.json")


@pytest.fixture
def headline():
    yield load_config(scenario_path("headline"))


class TestRunScenario:
    def test_headline_passes(self, headline):
        report = run_scenario(headline)
        assert report.passed
        assert [c.name for c in report.checks] == ["theorem", "corollary1", "wreath_def1", "dims"]
        theorem = report.check("theorem")
        assert [row[4] for row in theorem.rows] == [0, 0, 0, 0]
        assert set(theorem.notes) == {"phi(x1)", "phi(x2)"}

    def test_dims_table(self, headline):
        report = run_scenario(headline, ["dims"])
        rows = report.check("dims").rows
        assert [row[4] for row in rows] == [1, 2, 4, 8]
        assert [row[6] for row in rows] == [1, 4, 11, 24]
        assert [row[3] for row in rows] == [0, 2, 0, 0]

    @pytest.mark.parametrize("name", ["nilpotent_s", "lemma3", "proposition"])
    def test_bundled_scenarios_pass(self, name):
        assert run_scenario(load_config(scenario_path(name))).passed

    def test_no_checks_builds_nothing(self, headline):
        with open(scenario_path("headline"), encoding="utf-8") as f:
            document = json.load(f)
        document["max_basis_size"] = 1
        config = parse_config(json.dumps(document))
        report = run_scenario(config, [])
        assert report.checks == []
        assert report.passed
        with pytest.raises(BasisSizeExceededError):
            run_scenario(config)

    def test_algebra_error_becomes_failed_check(self, headline, monkeypatch):
        def broken(config, scenario):
            raise HypothesisError("broken on purpose")

        monkeypatch.setitem(runner.CHECK_RUNNERS, "dims", broken)
        report = run_scenario(headline, ["dims", "theorem"])
        assert not report.passed
        assert report.check("dims").notes == {"error": "broken on purpose"}
        assert report.check("theorem").passed
        assert not report.internal_error

    def test_unexpected_error_becomes_internal_failure(self, headline, monkeypatch):
        def crashing(config, scenario):
            return {}[(0, (0, 0))]

        monkeypatch.setitem(runner.CHECK_RUNNERS, "dims", crashing)
        report = run_scenario(headline, ["dims", "theorem"])
        dims = report.check("dims")
        assert not dims.passed
        assert dims.internal_error
        assert dims.notes["error"].startswith("internal error: KeyError")
        assert report.check("theorem").passed
        assert report.internal_error


class TestRunConfig:
    def test_runs_declared_checks(self):
        report = run_config(scenario_path("proposition"))
        assert report.passed
        assert [c.name for c in report.checks] == ["proposition"]

    def test_overrides_and_check_subset(self):
        report = run_config(scenario_path("lemma3"), "Fp:7", 2, ["lemma3"])
        assert report.field == "Fp:7"
        assert report.degree == 2
        assert [c.name for c in report.checks] == ["lemma3"]
        assert report.passed


class TestScenarioRunner:
    def test_errors_are_collected(self, tmp_path):
        outcomes = ScenarioRunner(jobs=1).run(
            [scenario_path("headline"), str(tmp_path / "absent.json")], checks=["dims"])
        assert outcomes[0].report.passed
        assert outcomes[1].report is None
        assert outcomes[1].error
        assert not outcomes[1].internal

    def test_crashing_config_does_not_lose_the_others(self, monkeypatch):
        real = runner.run_config

        def crash_on_headline(path, *args):
            if path.endswith("headline.json"):
                raise ZeroDivisionError("bad structure table")
            return real(path, *args)

        monkeypatch.setattr(runner, "run_config", crash_on_headline)
        outcomes = ScenarioRunner(jobs=1).run([scenario_path("headline"), scenario_path("proposition")])
        assert outcomes[0].internal
        assert outcomes[0].error == "internal error: ZeroDivisionError: bad structure table"
        assert outcomes[1].report.passed

    def test_pool_keeps_input_order(self):
        paths = [scenario_path("nilpotent_s"), scenario_path("headline")]
        outcomes = ScenarioRunner(jobs=2).run(paths, checks=["dims"])
        assert [o.path for o in outcomes] == paths
        assert [o.report.name for o in outcomes] == ["nilpotent_s", "headline"]

    def test_overrides_reach_every_config(self):
        outcomes = ScenarioRunner(jobs=1).run([scenario_path("headline")], degree_override=2, checks=["dims"])
        assert outcomes[0].report.degree == 2
        assert len(outcomes[0].report.check("dims").rows) == 3
