"""Acceptance criteria, each at its stated size and tolerance.

Every criterion logs one ``[PASS]``/``[FAIL]`` line, printed in the
"acceptance criteria" section at the end of the pytest run.
"""

from __future__ import annotations

from zonotopal import suites


def _report(log: list, number: int, result: suites.CheckResult) -> None:
    log.append(f"criterion {number}: {result.line()} [{result.elapsed:.2f}s]")
    log.extend(f"    {f}" for f in result.failures[:10])


def test_criterion_1_worked_example(acceptance_log):
    r = suites.worked_example()
    _report(acceptance_log, 1, r)
    assert r.passed
    assert r.elapsed < 1.0


def test_criterion_2_tutte_identity(acceptance_log):
    r = suites.tutte_identity_suite(count=200, seed=0)
    _report(acceptance_log, 2, r)
    assert r.instances >= 200
    assert r.passed
    assert r.elapsed < 120.0


def test_criterion_3_squarefree_model(acceptance_log):
    r = suites.squarefree_suite(count=200, pairs=1000, seed=0)
    _report(acceptance_log, 3, r)
    assert r.details["matrices"] >= 200
    assert r.details["length_pairs"] >= 1000
    assert r.passed


def test_criterion_4_graph_counts(acceptance_log):
    r = suites.graph_suite(count=50, seed=0)
    _report(acceptance_log, 4, r)
    assert r.instances >= 50
    assert r.passed


def test_criterion_5_reconstruction(acceptance_log):
    r = suites.reconstruction_suite(count=100, seed=0)
    _report(acceptance_log, 5, r)
    assert r.instances >= 100
    assert r.details["negative_multiplicity_events"] == 0
    assert r.passed


def test_criterion_6_zequivalence(acceptance_log):
    r = suites.zequiv_suite(count=50, seed=0)
    _report(acceptance_log, 6, r)
    assert r.instances >= 50
    pair = r.details["cross_ratio_pair"]
    assert pair == {"equivalent": False, "mode": "exact", "matroid_isomorphic": True}
    assert r.passed


def test_criterion_7_unimodular(acceptance_log):
    r = suites.unimodular_suite(count=30, seed=0)
    _report(acceptance_log, 7, r)
    assert r.instances >= 30
    assert r.details["non_witnessable_events"] == 0
    assert r.passed


def test_criterion_8_central_reduction(acceptance_log):
    r = suites.central_reduction_suite(count=30, seed=0)
    _report(acceptance_log, 8, r)
    assert r.instances >= 30
    assert r.passed

