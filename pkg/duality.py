"""Characters of finite abelian groups, the evaluation pairing and annihilators.

The dual of Z(d_1) x ... x Z(d_k) is represented with the same invariant factors: coefficients c act by
x -> sum(c_i x_i / d_i) mod 1. The pairing is symmetric in (c, x), so one annihilator routine serves both
directions, A(G^,H) for H <= G and A(G,S) for S <= G^.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence, TypeAlias

from pydantic import BaseModel, ConfigDict

import params
from core_group import (
    Element,
    FiniteAbelianGroup,
    Subgroup,
    TorusValue,
    embeds_in,
    quotient_group,
    subgroup_coords,
    subgroup_intersection,
    subgroup_structure,
)
from errors import GroupMismatchError, InconsistencyError

# A Subgroup whose parent carries dual=True; the primal group is dual_group(S.parent)
DualSubgroup: TypeAlias = Subgroup


def dual_group(G: FiniteAbelianGroup) -> FiniteAbelianGroup:
    return G.model_copy(update={"dual": not G.dual})


def primal_group(S: DualSubgroup) -> FiniteAbelianGroup:
    return dual_group(S.parent)


def require_dual(S: DualSubgroup, G: FiniteAbelianGroup) -> None:
    if S.parent != dual_group(G):
        raise GroupMismatchError(f"{S} is not a subgroup of the dual of {G}")


def full_dual(G: FiniteAbelianGroup) -> DualSubgroup:
    return Subgroup.whole(dual_group(G))


def zero_dual(G: FiniteAbelianGroup) -> DualSubgroup:
    return Subgroup.trivial(dual_group(G))


def dual_span(G: FiniteAbelianGroup, coeffs: Iterable[Sequence[int]]) -> DualSubgroup:
    G_hat = dual_group(G)
    return Subgroup.span(G_hat, (G_hat.element(c) for c in coeffs))


class Character(BaseModel):
    """ A homomorphism G -> Q/Z given by its coefficient vector. """
    model_config = ConfigDict(frozen=True)

    parent: FiniteAbelianGroup
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, G: FiniteAbelianGroup, coeffs: Sequence[int]) -> Character:
        dual_group(G).element(coeffs)
        return cls(parent=G, coeffs=tuple(coeffs))

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def as_element(self) -> Element:
        return Element(coords=self.coeffs)

    def __call__(self, x: Element) -> TorusValue:
        return evaluate(self, x)

    def __str__(self) -> str:
        return "chi" + str(self.as_element())


def _pairing_numerator(factors: tuple[int, ...], c: Sequence[int], x: Sequence[int]) -> int:
    """ sum(c_i x_i e/d_i) mod e, where e is the exponent; zero iff the pairing vanishes. """
    e = factors[-1] if factors else 1
    return sum(ci * xi * (e // d) for ci, xi, d in zip(c, x, factors)) % e


def evaluate(chi: Character, x: Element) -> TorusValue:
    chi.parent.check(x)
    return TorusValue.of(Fraction(_pairing_numerator(chi.parent.invariant_factors, chi.coeffs, x.coords),
                                  chi.parent.exponent))


def characters(S: DualSubgroup) -> list[Character]:
    G = primal_group(S)
    return [Character.model_construct(parent=G, coeffs=c) for c in subgroup_coords(S)]


@lru_cache(maxsize=65536)
def _full_annihilator(H: Subgroup) -> Subgroup:
    """ A(G^,H) as a subgroup of dual_group(H.parent), built from the characters of G/H.

    With G/H = Z(f_1) x ... and projection rows s_j, each character of G/H pulls back to
    c_i = s_ji d_i / f_j; these generate every character vanishing on H.
    """
    G = H.parent
    Q = quotient_group(G, H)
    gens = []
    for row, f in zip(Q.transform, Q.group.invariant_factors):
        coeffs = []
        for s, d in zip(row, G.invariant_factors):
            if (s * d) % f:
                raise InconsistencyError(f"projection row {row} is not well defined modulo {f} on {G}")
            coeffs.append((s * d // f) % d)
        gens.append(coeffs)
    G_hat = dual_group(G)
    A = Subgroup.span(G_hat, (G_hat.element(c) for c in gens))
    if A.order * H.order != G.order:
        raise InconsistencyError(f"|A(G^,H)| * |H| = {A.order} * {H.order}, expected {G.order}")
    return A


def _scan_annihilator(S: Subgroup, H: Subgroup) -> Subgroup:
    factors = H.parent.invariant_factors
    gens = [g.coords for g in H.generators()]
    killing = [c for c in subgroup_coords(S) if all(_pairing_numerator(factors, c, x) == 0 for x in gens)]
    return Subgroup.span(S.parent, (Element.model_construct(coords=c) for c in killing))


@lru_cache(maxsize=65536)
def _annihilator_in(S: Subgroup, H: Subgroup) -> Subgroup:
    A = subgroup_intersection(S, _full_annihilator(H))
    if S.order <= params.SCAN_CROSSCHECK_LIMIT:
        scanned = _scan_annihilator(S, H)
        if scanned != A:
            raise InconsistencyError(f"annihilator of {H} in {S}: congruence solve gives {A}, scan gives {scanned}")
    return A


def annihilator_in_dual(S: DualSubgroup, H: Subgroup) -> DualSubgroup:
    """ A(S,H): the characters of S vanishing on H. """
    require_dual(S, H.parent)
    return _annihilator_in(S, H)


def annihilator_in_group(G_or_H: FiniteAbelianGroup | Subgroup, S: DualSubgroup) -> Subgroup:
    """ A(H,S): the elements of H (or of all of G) on which every character of S vanishes. """
    if isinstance(G_or_H, FiniteAbelianGroup):
        G_or_H = Subgroup.whole(G_or_H)
    require_dual(S, G_or_H.parent)
    return _annihilator_in(G_or_H, S)


class DualityCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class DualityReport(BaseModel):
    group: str
    h: str
    s: str
    checks: list[DualityCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[DualityCheck]:
        return [check for check in self.checks if not check.passed]


def check_duality_invariants(G: FiniteAbelianGroup, H: Subgroup, S: DualSubgroup) -> DualityReport:
    """Verify the finite consequences of the annihilator isomorphisms for one (G, H, S).

    (i)   A(G^,H) has the invariant factors of G/H
    (ii)  G^/A(G^,H) has the invariant factors of H
    (iii) S/A(S,H) embeds in the dual of H
    """
    require_dual(S, G)
    G_hat = dual_group(G)
    A = annihilator_in_dual(full_dual(G), H)
    A_S = annihilator_in_dual(S, H)

    quotient_factors = quotient_group(G, H).group.invariant_factors
    annihilator_factors = subgroup_structure(A).invariant_factors
    restriction = quotient_group(G_hat, A)
    h_factors = subgroup_structure(H).invariant_factors

    # S/A(S,H) is the image of S in G^/A(G^,H)
    image = Subgroup.span(restriction.group, (restriction.project(g) for g in S.generators()))
    image_structure = subgroup_structure(image)

    checks = [
        DualityCheck(name="annihilator_is_dual_quotient", passed=quotient_factors == annihilator_factors,
                     detail=f"G/H ~ {quotient_factors}, A(G^,H) ~ {annihilator_factors}"),
        DualityCheck(name="dual_quotient_is_dual_subgroup", passed=restriction.group.invariant_factors == h_factors,
                     detail=f"G^/A(G^,H) ~ {restriction.group.invariant_factors}, H ~ {h_factors}"),
        DualityCheck(name="restriction_embeds",
                     passed=image.order * A_S.order == S.order and embeds_in(image_structure, dual_group(subgroup_structure(H))),
                     detail=f"S/A(S,H) ~ {image_structure.invariant_factors} into H^ ~ {h_factors}"),
        DualityCheck(name="perfect_pairing", passed=A.order * H.order == G.order,
                     detail=f"|A(G^,H)| = {A.order}, |H| = {H.order}, |G| = {G.order}"),
    ]
    return DualityReport(group=str(G), h=str(H), s=str(S), checks=checks)


def reflexivity_check(G: FiniteAbelianGroup, H: Subgroup) -> bool:
    return annihilator_in_group(G, annihilator_in_dual(full_dual(G), H)) == H


def character_image_order(chi: Character, H: Subgroup | None = None) -> int:
    """ |chi[H]|, the order of the cyclic image in Q/Z (H defaults to the whole group). """
    if H is None:
        H = Subgroup.whole(chi.parent)
    elif H.parent != chi.parent:
        raise GroupMismatchError(f"{H} is not a subgroup of {chi.parent}")
    return lcm(1, *(evaluate(chi, g).order for g in H.generators()))


def is_injective(chi: Character) -> bool:
    return character_image_order(chi) == chi.parent.order


def kernel(chi: Character) -> Subgroup:
    return annihilator_in_group(chi.parent, Subgroup.span(dual_group(chi.parent), [chi.as_element()]))
