import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import cli
from cli import build_parser, main
from core_group import abelian_groups_of_order_at_most, enumerate_subgroups, parse_group, parse_subgroup
from oracle import Failure, TheoremReport
from zee import (
    CONTINUUM,
    INFINITY,
    IntSubgroup,
    SupernaturalNumber,
    TorusSubgroupDesc,
    parse_descriptor,
    parse_int_subgroup,
    parse_supernatural,
)

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "closure_text": ["closure", "--group", "Z(4)", "--H", "gens=[2]", "--S", "gens=[2]"],
    "closure_json": ["closure", "--group", "Z(4)", "--H", "gens=", "--S", "dual:gens=[2]", "--output", "json"],
    "is_closed_text": ["is-closed", "--group", "Z(4)", "--H", "gens=", "--S", "gens=[2]"],
    "is_closed_json": ["is-closed", "--group", "Z(4)", "--H", "gens=", "--S", "gens=[2]", "--output", "json"],
    "is_dense_text": ["is-dense", "--group", "Z(4)", "--H", "gens=[2]", "--S", "gens=[2]"],
    "is_dense_json": ["is-dense", "--group", "Z(4)", "--H", "gens=[1]", "--S", "gens=[2]", "--output", "json"],
    "family_text": ["family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]"],
    "family_json": ["family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--output", "json"],
    "same_family_true_text": ["same-family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--S2", "gens=[1,0]"],
    "same_family_false_text": ["same-family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--S2", "gens=[0,1]"],
    "same_family_false_json": ["same-family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--S2", "gens=[0,1]",
                               "--output", "json"],
    "greatest_text": ["greatest", "--group", "Z(4)", "--S", "gens=[2]"],
    "greatest_json": ["greatest", "--group", "Z(4)", "--S", "gens=[2]", "--output", "json"],
    "minimals_json": ["minimals", "--group", "Z(4)", "--S", "gens=[2]", "--output", "json"],
    "classify_text": ["classify", "--group", "Z(4)", "--S", "gens=[1]"],
    "classify_json": ["classify", "--group", "Z(4)", "--S", "gens=[1]", "--output", "json"],
    "z_closure_text": ["z-closure", "--S", "tors=2^2*3,free=0", "--k", "8"],
    "z_closure_json": ["z-closure", "--S", "tors=2^2*3,free=0", "--k", "8", "--output", "json"],
    "z_classify_text": ["z-classify", "--S", "tors=2^2*3,free=0"],
    "z_classify_json": ["z-classify", "--S", "tors=1,free=1", "--output", "json"],
    "z_ms_text": ["z-ms", "--S", "tors=2^inf,free=3"],
    "z_MS_json": ["z-MS", "--S", "tors=2^inf,free=3", "--output", "json"],
    "verify_suite_text": ["verify", "--suite", "closure_formula", "--max-order", "4", "--jobs", "1"],
    "verify_all_text": ["verify", "--suite", "all", "--max-order", "1", "--jobs", "1"],
    "verify_json": ["verify", "--suite", "bohr_all_closed", "--max-order", "2", "--jobs", "1", "--output", "json"],
}

ROUND_TRIP_GROUPS = abelian_groups_of_order_at_most(24)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_closure_text(capsys):
    code, out, _ = run(capsys, "closure", "--group", "Z(4)", "--H", "gens=[2]", "--S", "gens=[2]")
    assert code == 0
    assert out.splitlines() == ["closure: gens=[2]", "closed: true"]


def test_z_closure_prints_the_subgroup(capsys):
    code, out, _ = run(capsys, "z-closure", "--S", "tors=2^2*3,free=0", "--k", "8")
    assert (code, out.strip()) == (0, "4Z")


def test_json_envelope(capsys):
    code, out, _ = run(capsys, "is-closed", "--group", "Z(4)", "--H", "gens=", "--S", "dual:gens=[2]", "--output", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["version"] == 1
    assert payload["command"] == "is-closed"
    assert payload["input"] == {"group": "Z(4)", "h": "gens=", "s": "dual:gens=[2]"}
    assert payload["result"] == {"closed": False}
    assert payload["witness"] == [2]


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--group", "Z(8)", "--S", "gens=[1]", "--output", "json")
    result = json.loads(out)["result"]
    assert code == 0
    assert result["verdicts"]["sc"] is True
    assert result["verdicts"]["hausdorff"] is True
    assert result["closed_family"] == [[], [[4]], [[2]], [[1]]]
    assert result["kernel"] == []


def test_z_classify(capsys):
    code, out, _ = run(capsys, "z-classify", "--S", "tors=1,free=1")
    assert code == 0
    assert "topologically_simple: true" in out.splitlines()


def test_same_family_and_family_listing(capsys):
    code, out, _ = run(capsys, "same-family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--S2", "gens=[1,0]")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, "same-family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]", "--S2", "gens=[0,1]")
    assert out.splitlines() == ["false", "witness: gens=[1,0]"]
    code, out, _ = run(capsys, "family", "--group", "Z(2)xZ(2)", "--S", "gens=[1,0]")
    assert out.strip() == "gens=[0,1] | gens=[0,1],[1,0]"


def test_greatest_and_minimals(capsys):
    _, out, _ = run(capsys, "greatest", "--group", "Z(4)", "--S", "gens=[2]")
    assert out.strip() == "gens=[2]"
    _, out, _ = run(capsys, "minimals", "--group", "Z(4)", "--S", "gens=[2]")
    assert out.strip() == "gens=[2]"


def test_ms_and_MS(capsys):
    _, out, _ = run(capsys, "z-ms", "--S", "tors=2^inf,free=3")
    assert out.strip() == "tors=2^inf,free=0"
    _, out, _ = run(capsys, "z-MS", "--S", "tors=2^inf,free=3")
    assert out.strip() == "tors=2^inf,free=c"


def test_strict_exit_reports_false_answers(capsys):
    argv = ["is-dense", "--group", "Z(4)", "--H", "gens=[2]", "--S", "gens=[2]"]
    assert run(capsys, *argv)[0] == 0
    assert run(capsys, *argv, "--strict-exit")[0] == 1
    assert run(capsys, "is-dense", "--group", "Z(4)", "--H", "gens=[1]", "--S", "gens=[2]", "--strict-exit")[0] == 0


def test_parse_errors_exit_2_with_a_caret(capsys):
    code, out, err = run(capsys, "closure", "--group", "Z(2)*Z(4)", "--H", "gens=", "--S", "gens=")
    assert (code, out) == (2, "")
    assert "^" in err
    code, _, _ = run(capsys, "closure", "--group", "Z(4)", "--H", "gens=[5]", "--S", "gens=")
    assert code == 2
    code, _, err = run(capsys, "closure", "--group", "Z(4)", "--S", "gens=")
    assert code == 2 and "--H" in err


def test_capacity_errors_exit_3(capsys):
    big = "x".join(["Z(2)"] * 9)
    code, _, err = run(capsys, "family", "--group", big, "--S", "gens=")
    assert code == 3
    assert "PD_MAX_ORDER" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "closure_formula", "--max-order", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("SUITE closure_formula CHECKED ")
    assert lines[-1].endswith("FAILURES 0")
    code, _, err = run(capsys, "verify", "--suite", "nope", "--max-order", "4")
    assert code == 2 and "unknown suite" in err


def test_output_is_deterministic(capsys):
    argv = ["classify", "--group", "Z(2)xZ(4)", "--S", "gens=[1,1]", "--output", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_unknown_command_is_rejected():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate"])


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_output_matches_the_golden_file(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_CASES[name])
    assert code == 0
    assert out.encode() == (GOLDEN / f"{name}.txt").read_bytes()


def test_golden_cases_cover_every_command():
    commands = {argv[0] for argv in GOLDEN_CASES.values()}
    assert commands == set(cli.COMMANDS)
    assert len(GOLDEN_CASES) >= 20


def test_json_subgroups_are_sorted_generator_lists(capsys):
    _, out, _ = run(capsys, "family", "--group", "Z(2)xZ(4)", "--S", "gens=[1,0],[0,1]", "--output", "json")
    family = json.loads(out)["result"]["closed_family"]
    G = parse_group("Z(2)xZ(4)")
    assert family == [[list(g.coords) for g in H.generators()] for H in enumerate_subgroups(G)]
    assert all(gens == sorted(gens) for gens in family)
    assert [parse_subgroup("gens=" + ",".join(f"[{','.join(map(str, g))}]" for g in gens), G)
            for gens in family] == enumerate_subgroups(G)


def test_verify_failures_only_change_the_exit_code_under_strict_exit(capsys, monkeypatch):
    failing = TheoremReport(theorem_id="closure_formula", max_order=2, instances_checked=3,
                            failures=[Failure(group="Z(2)", h="gens=", s="gens=[1]", detail="closure differs")])
    monkeypatch.setattr(cli, "run_suite", lambda suite, max_order, jobs: failing)
    argv = ["verify", "--suite", "closure_formula", "--max-order", "2"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[-1] == "TOTAL CHECKED 3 FAILURES 1"
    assert run(capsys, *argv, "--strict-exit")[0] == 1


def test_passing_verify_keeps_exit_0_under_strict_exit(capsys):
    assert run(capsys, "verify", "--suite", "bohr_all_closed", "--max-order", "2", "--strict-exit")[0] == 0


@st.composite
def canonical_specs(draw):
    G = draw(st.sampled_from(ROUND_TRIP_GROUPS))
    H = draw(st.sampled_from(enumerate_subgroups(G)))
    exponents = draw(st.tuples(*[st.sampled_from([0, 1, 2, 3, INFINITY])] * 4))
    torsion = SupernaturalNumber.of(dict(zip((2, 3, 5, 7), exponents)), draw(st.sampled_from([0, INFINITY])))
    S = TorusSubgroupDesc(torsion=torsion, free_rank=draw(st.sampled_from([0, 1, 2, CONTINUUM])))
    return G, H, S, IntSubgroup(k=draw(st.integers(0, 10 ** 6)))


@settings(max_examples=1000, deadline=None)
@given(canonical_specs())
def test_canonical_specs_print_and_parse_back(spec):
    G, H, S, K = spec
    assert parse_group(str(G)) == G and str(parse_group(str(G))) == str(G)
    assert parse_subgroup(str(H), G) == H and str(parse_subgroup(str(H), G)) == str(H)
    assert parse_supernatural(str(S.torsion)) == S.torsion
    assert parse_descriptor(str(S)) == S and str(parse_descriptor(str(S))) == str(S)
    assert parse_int_subgroup(str(K)) == K
