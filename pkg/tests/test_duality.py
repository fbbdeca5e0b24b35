from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core_group import (
    Subgroup,
    TorusValue,
    enumerate_subgroups,
    parse_group,
    parse_subgroup,
    subgroup_intersection,
    subgroup_sum,
)
from duality import (
    Character,
    annihilator_in_dual,
    annihilator_in_group,
    character_image_order,
    characters,
    check_duality_invariants,
    dual_group,
    dual_span,
    evaluate,
    full_dual,
    is_injective,
    kernel,
    reflexivity_check,
    zero_dual,
)
from errors import GroupMismatchError, MalformedElementError

GROUPS = [parse_group(text) for text in ["Z(1)", "Z(4)", "Z(6)", "Z(2)xZ(2)", "Z(2)xZ(4)", "Z(3)xZ(3)", "Z(2)xZ(6)"]]


def test_double_dual_is_the_group(z2z4):
    G_hat = dual_group(z2z4)
    assert G_hat.dual and G_hat.invariant_factors == z2z4.invariant_factors
    assert dual_group(G_hat) == z2z4
    assert G_hat != z2z4


def test_evaluate(z4, z2z4):
    chi = Character.of(z4, [1])
    assert evaluate(chi, z4.element([2])) == TorusValue.of(Fraction(1, 2))
    assert str(chi(z4.element([3]))) == "3/4"
    psi = Character.of(z2z4, [1, 1])
    assert evaluate(psi, z2z4.element([1, 2])).is_zero()
    assert evaluate(psi, z2z4.element([1, 1])) == TorusValue.of(Fraction(3, 4))
    with pytest.raises(GroupMismatchError):
        evaluate(chi, z2z4.element([0, 1]))
    with pytest.raises(MalformedElementError):
        Character.of(z4, [4])


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_evaluation_is_bilinear(G):
    points = list(G.elements())
    for c in points:
        chi = Character.of(G, c.coords)
        for x in points:
            for y in points:
                assert evaluate(chi, G.add(x, y)) == evaluate(chi, x) + evaluate(chi, y)
            # symmetric in character and element
            assert evaluate(chi, x) == evaluate(Character.of(G, x.coords), c)


def test_annihilators_in_z4(z4):
    H = parse_subgroup("gens=[2]", z4)
    assert str(annihilator_in_dual(full_dual(z4), H)) == "gens=[2]"
    assert annihilator_in_dual(full_dual(z4), Subgroup.trivial(z4)) == full_dual(z4)
    assert annihilator_in_dual(full_dual(z4), Subgroup.whole(z4)) == zero_dual(z4)
    assert annihilator_in_group(z4, dual_span(z4, [[2]])) == H
    assert annihilator_in_group(z4, zero_dual(z4)) == Subgroup.whole(z4)


def test_annihilator_inside_a_dual_subgroup(klein):
    H = parse_subgroup("gens=[1,0]", klein)
    S = dual_span(klein, [[1, 1]])
    assert annihilator_in_dual(S, H).is_trivial()
    assert annihilator_in_dual(full_dual(klein), H) == dual_span(klein, [[0, 1]])
    assert annihilator_in_group(H, dual_span(klein, [[0, 1]])) == H


def test_annihilator_rejects_primal_subgroups(z4):
    with pytest.raises(GroupMismatchError):
        annihilator_in_dual(Subgroup.whole(z4), Subgroup.trivial(z4))
    with pytest.raises(GroupMismatchError):
        annihilator_in_group(z4, Subgroup.whole(z4))


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_annihilators_pair_perfectly(G):
    subgroups = enumerate_subgroups(G)
    for H in subgroups:
        A = annihilator_in_dual(full_dual(G), H)
        assert A.order * H.order == G.order
        assert all(evaluate(chi, x).is_zero() for chi in characters(A) for x in H.generators())
        assert reflexivity_check(G, H)
        for K in subgroups:
            if H.issubset(K):
                assert annihilator_in_dual(full_dual(G), K).issubset(A)


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_duality_invariants_hold(G):
    for H in enumerate_subgroups(G):
        for S in enumerate_subgroups(dual_group(G)):
            report = check_duality_invariants(G, H, S)
            assert report.passed, report.failures()


def test_duality_report_names_every_check(z4):
    report = check_duality_invariants(z4, parse_subgroup("gens=[2]", z4), full_dual(z4))
    assert [check.name for check in report.checks] == [
        "annihilator_is_dual_quotient", "dual_quotient_is_dual_subgroup", "restriction_embeds", "perfect_pairing",
    ]
    assert report.failures() == []


def test_character_images(z4, klein):
    generator, doubling = Character.of(z4, [1]), Character.of(z4, [2])
    assert character_image_order(generator) == 4
    assert character_image_order(doubling) == 2
    assert character_image_order(generator, parse_subgroup("gens=[2]", z4)) == 2
    assert is_injective(generator) and not is_injective(doubling)
    assert kernel(doubling) == parse_subgroup("gens=[2]", z4)
    assert kernel(generator).is_trivial()
    assert not is_injective(Character.of(klein, [1, 1]))
    with pytest.raises(GroupMismatchError):
        character_image_order(generator, Subgroup.whole(klein))


def test_characters_of_a_dual_subgroup(z4):
    assert [str(chi) for chi in characters(dual_span(z4, [[2]]))] == ["chi[0]", "chi[2]"]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_annihilator_of_a_sum_is_the_intersection(G, data):
    subgroups = enumerate_subgroups(G)
    H1, H2 = data.draw(st.sampled_from(subgroups)), data.draw(st.sampled_from(subgroups))
    S = data.draw(st.sampled_from(enumerate_subgroups(dual_group(G))))
    assert annihilator_in_dual(S, subgroup_sum(H1, H2)) == subgroup_intersection(
        annihilator_in_dual(S, H1), annihilator_in_dual(S, H2))
