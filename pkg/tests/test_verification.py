import asyncio
import io

import pytest

from hecke import exact_core
from operators.finite_model import builtin_model
from verification import suites
from verification.registry import SuiteKind, SuiteRegistry, get_global_registry
from verification.scheduler import CheckResult, SuiteScheduler, VerificationReport, print_summary


def test_global_registry():
    registry = get_global_registry()
    keys = [s['key'] for s in registry.get_all_suites()]
    assert set(keys) == {"cosets", "radial", "qexp", "criterion", "finite", "hyperbolic"}
    priorities = [s['priority'] for s in registry.get_all_suites()]
    assert priorities == sorted(priorities)
    assert [s['key'] for s in registry.get_suites_by_kind(SuiteKind.NUMERIC)] == ["hyperbolic"]


def test_runner_is_imported_lazily():
    registry = get_global_registry()
    assert registry.get_suite_runner("cosets") is suites.run_cosets_suite
    assert registry.get_suite_runner("missing") is None


def test_broken_module_path():
    registry = SuiteRegistry()
    registry.register("bad", "Bad", module_path="verification.nowhere", runner_name="run")
    assert registry.get_suite_runner("bad") is None


def stub_registry():
    registry = SuiteRegistry()

    def passing(seed):
        return [CheckResult(check="ok", cases=seed, failures=0)]

    def raising(seed):
        raise RuntimeError("boom")

    registry.register("pass", "Passing", priority=2, runner=passing)
    registry.register("raise", "Raising", priority=1, runner=raising)
    registry.register("off", "Disabled", enabled=False, runner=passing)
    return registry


def test_scheduler_collects_outcomes():
    scheduler = SuiteScheduler(seed=3, max_concurrent=2)
    scheduler.registry = stub_registry()
    report = asyncio.run(scheduler.run_all())
    assert [o.key for o in report.suites] == ["raise", "pass"]
    assert report.failures == 1
    assert not report.passed
    error = report.suites[0].checks[0]
    assert error.check == "raise.error"
    assert "RuntimeError: boom" in error.detail
    assert report.suites[1].checks[0].cases == 3
    assert scheduler.results['total_suites'] == 2
    assert scheduler.results['failed_suites'] == 1


def test_report_json_and_summary():
    report = VerificationReport(seed=0, suites=[])
    assert report.to_json() == {"seed": 0, "failures": 0, "checks": []}
    stream = io.StringIO()
    print_summary(report, stream)
    assert "total failures: 0" in stream.getvalue()


@pytest.mark.parametrize(
    "runner",
    [suites.run_cosets_suite, suites.run_radial_suite, suites.run_qexp_suite, suites.run_criterion_suite],
)
def test_exact_suites_pass(runner):
    checks = runner(0)
    assert checks
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_finite_checks_on_an_abelian_gamma():
    checks = suites.finite_model_checks(builtin_model("s3_a3"), seed=0, cases=4, key="s3_a3")
    names = {c.check for c in checks}
    assert {"S_hecke_products", "expectation_theorem", "compression_multiplicative", "wandering_function"} <= names
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_compression_is_skipped_for_non_abelian_gamma():
    model = builtin_model("s4_s3")
    wd = suites.rep_engine.regular_decomposition(model)
    [check] = suites.compression_checks(model, wd, None, 4)
    assert check.cases == 0
    assert "skipped" in check.detail


def test_random_element_has_bounded_index(rng):
    for _ in range(10):
        g = suites.random_element(rng, 6)
        assert 1 <= exact_core.divisor_index(g) <= 6
