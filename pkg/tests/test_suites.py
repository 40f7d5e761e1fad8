from sqpo.suites import (assoc_suite, concurrency_suite, fpc_suite, jump_suite,
                         run_suite, unit_suite)


def test_fpc_suite_small_bound():
    report = fpc_suite(size_bound=2, n_random=10, seed=3)
    assert report.passed, [r for r in report.results if r.status != "pass"]
    assert report.counts()["fail"] == 0


def test_assoc_suite_small():
    report = assoc_suite(n_random=5, seed=1)
    assert report.passed


def test_concurrency_suite_small():
    report = concurrency_suite(n_random=30, seed=2, max_host_vertices=4)
    assert report.passed


def test_jump_suite_small():
    report = jump_suite(n_random=30, seed=3, size_bound=4)
    assert report.passed


def test_unit_suite():
    report = unit_suite(n_random=10, seed=4)
    assert report.passed


def test_run_suite_dispatch_and_lines():
    report = run_suite("unit", n_random=2, seed=1)
    assert report.passed
    lines = report.lines(verbose=True)
    assert any(line.startswith("[PASS") for line in lines)
    assert lines[-1].startswith("suite unit:")
