"""
Executes the checks a scenario config requests, and runs several configs side by
side in a process pool.
"""
import logging
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Sequence

from .config import ScenarioConfig, load_config
from .embedding import (EmbeddingScenario, corollary1_dims, domain_dims_by_decomposition,
                        generator_images, lemma3_check, proposition_check, verify_monomorphism)
from .exceptions import (AlgebraError, BasisSizeExceededError, InvalidScenarioError, ParseError)
from .report import CheckResult, RunReport
from .wreath import check_definition1


def _theorem(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    report = verify_monomorphism(s.phi)
    rows = [[r.degree, r.domain_dim, r.codomain_dim, r.rank, r.kernel_dim] for r in report.rows]
    notes = {}
    for i, image in enumerate(generator_images(s, s.codomain)):
        notes[f"phi({s.lie.names[i]})"] = str(image)
    return CheckResult("theorem", report.passed,
                       ("degree", "domain", "codomain", "rank", "kernel"), rows, notes)


def _lemma3(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    report = lemma3_check(s)
    rows = [[r.degree, r.ideal_dim, r.square_dim, r.quotient_dim, r.rank, r.kernel_dim] for r in report.rows]
    return CheckResult("lemma3", report.passed,
                       ("degree", "M", "M^2", "M/M^2", "rank", "kernel"), rows)


def _proposition(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    report = proposition_check(config.variety_X, config.generators, list(config.proposition_Y),
                               config.degree, config.field)
    rows = [[d, a, b] for d, (a, b) in enumerate(zip(report.subpair_dims, report.free_dims))]
    notes = {"Y": ", ".join(config.proposition_Y)}
    return CheckResult("proposition", report.passed, ("degree", "subpair", "free"), rows, notes)


def _corollary1(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    report = corollary1_dims(s)
    rows = [[d, a, b] for d, (a, b) in enumerate(zip(report.image_dims, report.domain_dims))]
    return CheckResult("corollary1", report.passed, ("degree", "image", "domain"), rows)


def _wreath_def1(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    report = check_definition1(s.codomain)
    rows = [[name, "yes" if passed else "no"] for name, passed in report.conditions.items()]
    return CheckResult("wreath_def1", report.passed, ("condition", "holds"), rows, dict(report.details))


def _dims(config: ScenarioConfig, s: EmbeddingScenario) -> CheckResult:
    """Domain dims against the decomposition count, with M, L/M and the wreath module alongside."""
    ideal = s.ideal.dims()
    lie = s.lie.dims()
    domain = s.domain.dims()
    decomposition = domain_dims_by_decomposition(s)
    codomain = s.codomain.module.dims()
    rows = [[d, lie[d], ideal[d], lie[d] - ideal[d], domain[d], decomposition[d], codomain[d]]
            for d in range(s.degree + 1)]
    return CheckResult("dims", domain == decomposition,
                       ("degree", "L", "M", "L/M", "domain", "decomposition", "wreath"), rows)


CHECK_RUNNERS: Dict[str, Callable[[ScenarioConfig, EmbeddingScenario], CheckResult]] = {
    "theorem": _theorem,
    "lemma3": _lemma3,
    "proposition": _proposition,
    "corollary1": _corollary1,
    "wreath_def1": _wreath_def1,
    "dims": _dims,
}


def run_scenario(config: ScenarioConfig, checks: Optional[Sequence[str]] = None) -> RunReport:
    """
    Runs the checks in declared order. Algebraic failures inside a check become a
    failed verdict and anything unexpected a failed verdict marked as an internal
    error; scenario and size errors propagate.
    """
    start = time.perf_counter()
    report = RunReport(config.name, str(config.field), config.degree)
    checks = config.checks if checks is None else tuple(checks)
    if not checks:
        return report
    scenario = config.scenario()
    for name in checks:
        check_start = time.perf_counter()
        try:
            result = CHECK_RUNNERS[name](config, scenario)
        except (InvalidScenarioError, BasisSizeExceededError):
            raise
        except AlgebraError as e:
            logging.error(f"[{config.name}] check {name} failed: {e}")
            result = CheckResult(name, False, notes={"error": str(e)})
        except Exception as e:
            logging.exception(f"[{config.name}] check {name} raised an internal error")
            result = CheckResult(name, False, notes={"error": f"internal error: {type(e).__name__}: {e}"},
                                 internal_error=True)
        result.seconds = time.perf_counter() - check_start
        logging.info(f"[{config.name}] {name}: {'pass' if result.passed else 'FAIL'}")
        report.checks.append(result)
    report.seconds = time.perf_counter() - start
    return report


def run_config(path: str, field_override: Optional[str] = None, degree_override: Optional[int] = None,
               checks: Optional[Sequence[str]] = None) -> RunReport:
    """Loads a config and runs its checks in declared order."""
    return run_scenario(load_config(path, field_override, degree_override), checks)


@dataclass
class RunOutcome:
    """What a worker hands back: a report, or the message of a config error or a crash."""
    path: str
    report: Optional[RunReport] = None
    error: Optional[str] = None
    internal: bool = False


# --- Worker Function (Must be at the top level for pickling) ---


def _run_config_wrapper(task) -> RunOutcome:
    path, field_override, degree_override, checks = task
    try:
        logging.info(f"Running scenario config: {path}")
        return RunOutcome(path, report=run_config(path, field_override, degree_override, checks))
    except (OSError, ParseError, AlgebraError) as e:
        logging.error(f"Scenario config {path} rejected: {e}")
        return RunOutcome(path, error=str(e))
    except Exception as e:
        logging.exception(f"Scenario config {path} raised an internal error")
        return RunOutcome(path, error=f"internal error: {type(e).__name__}: {e}", internal=True)


class ScenarioRunner:
    """
    Runs scenario configs in a multiprocessing.Pool. Results come back in input
    order (ordered imap), so reports do not depend on scheduling; jobs=1 runs
    inline without a pool.
    """

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs or os.cpu_count() or 1
        logging.debug(f"Initialized scenario runner with {self.jobs} worker processes.")

    def run(self, paths: Sequence[str], field_override: Optional[str] = None,
            degree_override: Optional[int] = None,
            checks: Optional[Sequence[str]] = None) -> List[RunOutcome]:
        tasks = [(path, field_override, degree_override,
                  tuple(checks) if checks is not None else None) for path in paths]
        if self.jobs == 1 or len(tasks) <= 1:
            return [_run_config_wrapper(task) for task in tasks]
        with Pool(processes=min(self.jobs, len(tasks))) as pool:
            return list(pool.imap(_run_config_wrapper, tasks))
