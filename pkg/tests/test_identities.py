import numpy as np
import pytest

from choikit import identities as I
from choikit import io


@pytest.mark.parametrize("name", sorted(I.SUITES))
def test_every_suite_passes_small(name):
    report = I.run_suite(name, seed=3, trials=3, budget=8)
    assert report["passed"], report["failures"]
    assert report["rows"]


def test_run_suite_is_deterministic():
    a = I.run_suite("prop51", seed=9, trials=10)
    b = I.run_suite("prop51", seed=9, trials=10)
    assert io.dumps(a) == io.dumps(b)


def test_suite_streams_do_not_depend_on_order():
    first = I.run_suite("choi", seed=4, trials=5)
    I.run_suite("table1", seed=4, trials=5)
    assert io.dumps(I.run_suite("choi", seed=4, trials=5)) == io.dumps(first)


def test_tolerance_override_reports_failing_instance():
    report = I.run_suite("table1", seed=1, trials=2, tol=-1.0)
    assert not report["passed"]
    failure = report["failures"][0]
    assert "phi" in failure["instance"]
    # the default tolerance is restored afterwards
    assert I.run_suite("table1", seed=1, trials=2)["passed"]


def test_counterexample_is_exact():
    r = I.counterexample_c2()
    assert r["equal_gram_tables"] and r["distinct_forms"] and r["detected"]


def test_cone_transfer_with_ad_sigma_is_consistent():
    report = I.run_suite("thm43", seed=2, trials=2, sigma="ad")
    assert report["passed"]
    assert all(d["status"] == "consistent" for d in report["details"].values())


def test_all_suites_listed():
    assert set(I.ALL_SUITES) == set(I.SUITES) == set(I.DEFAULT_TRIALS)
    assert np.all([name in I.SUITES for name in ("table1", "prop51", "prop52", "thm33", "thm43", "prop46")])
