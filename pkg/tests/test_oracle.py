from math import comb

import pytest

from core_group import Subgroup, enumerate_subgroups, parse_group, parse_subgroup
from database import read_report
from duality import dual_group, dual_span
from errors import CapacityError, UnknownSuiteError
from oracle import (
    SUITE_IDS,
    Failure,
    TheoremReport,
    check_group,
    check_zee_divisor_oracle,
    check_zee_lcm_closure,
    check_zee_torsion_determinism,
    closure_by_definition,
    dense_by_definition,
    resolve_suite,
    run_suite,
    zee_grid,
)
from topology import PrecompactTopology, closure
from zee import SupernaturalNumber, parse_supernatural

FINITE_SUITES = [suite for suite in SUITE_IDS if not suite.startswith("zee_")]


def test_definition_level_closure(z4):
    topo = PrecompactTopology.of(dual_span(z4, [[2]]))
    assert str(closure_by_definition(topo, Subgroup.trivial(z4))) == "gens=[2]"
    assert not dense_by_definition(topo, parse_subgroup("gens=[2]", z4))
    assert dense_by_definition(PrecompactTopology.anti_discrete(z4), Subgroup.trivial(z4))


def test_definition_agrees_with_the_formula(z2z4):
    for S in enumerate_subgroups(dual_group(z2z4)):
        topo = PrecompactTopology.of(S)
        for H in enumerate_subgroups(z2z4):
            assert closure_by_definition(topo, H) == closure(topo, H)


def test_suite_identifiers():
    assert len(SUITE_IDS) == 18
    assert resolve_suite("reflexivity") == "annihilator_reflexivity"
    with pytest.raises(UnknownSuiteError) as info:
        resolve_suite("no_such_suite")
    assert str(info.value) == "unknown suite 'no_such_suite'"


@pytest.mark.parametrize("suite_id", FINITE_SUITES)
def test_finite_suites_pass(suite_id):
    report = run_suite(suite_id, 8, jobs=1)
    assert report.theorem_id == suite_id
    assert report.instances_checked > 0
    assert report.passed, report.to_text()


def test_closure_formula_visits_every_pair():
    expected = sum(len(enumerate_subgroups(G)) ** 2
                   for G in [parse_group(t) for t in ["Z(1)", "Z(2)", "Z(3)", "Z(4)", "Z(2)xZ(2)"]])
    assert run_suite("closure_formula", 4).instances_checked == expected


def test_check_group_counts_instances(klein):
    count, failures = check_group("bohr_all_closed", klein)
    assert (count, failures) == (5, [])
    count, failures = check_group("same_family_criterion", klein)
    assert (count, failures) == (25, [])


def test_reports_are_stored(klein):
    report = run_suite("reflexivity", 3)
    assert report.theorem_id == "annihilator_reflexivity"
    assert read_report("annihilator_reflexivity", 3) == report.model_dump()
    assert read_report("annihilator_reflexivity", 99) is None


def test_parallel_run_matches_serial_run():
    assert run_suite("coset_closure", 6, jobs=2) == run_suite("coset_closure", 6, jobs=1)


def test_group_suites_refuse_large_orders():
    with pytest.raises(CapacityError):
        run_suite("closure_formula", 10_000)


def test_report_text():
    report = TheoremReport(theorem_id="closure_formula", max_order=4, instances_checked=12)
    assert report.to_text() == "SUITE closure_formula CHECKED 12 FAILURES 0"
    failing = report.model_copy(update={"failures": [Failure(group="Z(2)", h="gens=", s="gens=[1]", detail="boom")]})
    assert not failing.passed
    assert failing.to_text().splitlines() == [
        "SUITE closure_formula CHECKED 12 FAILURES 1",
        "  WITNESS group=Z(2) H=gens= S=gens=[1]",
        "  DETAIL boom",
    ]


def test_zee_divisor_oracle():
    grid = [parse_supernatural(t) for t in ["1", "2^2*3", "2^inf", "all", "all*3^0"]]
    assert check_zee_divisor_oracle(grid, 24) == (5 * 24, [])


def test_zee_lcm_closure():
    count, failures = check_zee_lcm_closure(8)
    assert failures == []
    # every non-empty subset of {1..8} with at most five elements
    assert count == sum(comb(8, r) for r in range(1, 6))


def test_zee_torsion_determinism():
    assert check_zee_torsion_determinism([SupernaturalNumber.one(), parse_supernatural("2^inf*3")], 12) == (24, [])


def test_zee_suites_use_the_configured_grid():
    assert len(zee_grid()) == 50
    report = run_suite("zee_divisor_oracle", 10)
    assert report.instances_checked == 500
    assert report.passed


def test_zee_lcm_suite():
    report = run_suite("zee_lcm_closure", 6)
    assert report.passed
    assert report.instances_checked == 2 ** 6 - 1 - 1
