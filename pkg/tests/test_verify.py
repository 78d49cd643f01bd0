import time

from verify import run_abelian_thm, run_cyclic_sums, run_invariants, run_trichotomy


def test_trichotomy_suite_small_grid():
    report = run_trichotomy(grid=[(4, 1), (6, 1)], cols=(4, 6))
    assert report.passed, report.failures
    assert report.applicable == report.swept > 0
    assert report.branches.get("EXPECT_NOT_SPECIAL", 0) >= 1


def test_cyclic_sums_suite_small_grid():
    report = run_cyclic_sums(grid=[(4, 1)], cols=(6, 7))
    assert report.passed, report.failures
    assert report.applicable >= 1
    assert report.not_special >= report.applicable


def test_abelian_suite_reports_vacuous_grid():
    report = run_abelian_thm(grid=[(2, 1)], cols=(14, 14))
    assert report.passed
    assert report.covers == 1
    assert report.applicable == 0
    assert "  vacuous: no applicable instance within the swept grid" in report.lines()


def test_invariants_suite_is_seeded():
    first = run_invariants(samples=40, seed=11)
    second = run_invariants(samples=40, seed=11)
    assert first.passed, first.failures
    assert (first.covers, first.swept, first.applicable) == (second.covers, second.swept, second.applicable)
    assert first.covers == 40


def test_invariants_suite_with_default_seed_is_fast():
    started = time.perf_counter()
    report = run_invariants(samples=300, seed=42)
    assert time.perf_counter() - started < 30
    assert report.passed, report.failures
    assert report.covers == 300
