"""Precompact group topologies on a finite abelian group G.

Each subgroup S of the dual induces tau_S, the weakest topology making the characters of S continuous.
Its closure operator is H -> A(G, A(S,H)); everything else here is derived from that operator and
re-derived through an independent criterion, raising InconsistencyError when the two paths disagree.
"""
from __future__ import annotations

from functools import lru_cache, reduce
from typing import Any, Iterable

from pydantic import BaseModel, ConfigDict
from sympy import isprime

import params
from core_group import (
    FiniteAbelianGroup,
    Subgroup,
    enumerate_subgroups,
    subgroup_coords,
    subgroup_intersection,
    subgroup_sort_key,
    subgroup_sum,
)
from duality import (
    DualSubgroup,
    annihilator_in_dual,
    annihilator_in_group,
    character_image_order,
    characters,
    dual_group,
    full_dual,
    is_injective,
    primal_group,
    require_dual,
    zero_dual,
)
from errors import GroupMismatchError, InconsistencyError, PreconditionError


class PrecompactTopology(BaseModel):
    """ tau_S on G; kernel = A(G,S) is the closure of the trivial subgroup. """
    model_config = ConfigDict(frozen=True)

    group: FiniteAbelianGroup
    s: DualSubgroup
    kernel: Subgroup

    @classmethod
    def of(cls, S: DualSubgroup) -> PrecompactTopology:
        G = primal_group(S)
        return cls(group=G, s=S, kernel=annihilator_in_group(G, S))

    @classmethod
    def bohr(cls, G: FiniteAbelianGroup) -> PrecompactTopology:
        return cls.of(full_dual(G))

    @classmethod
    def anti_discrete(cls, G: FiniteAbelianGroup) -> PrecompactTopology:
        return cls.of(zero_dual(G))

    @property
    def hausdorff(self) -> bool:
        return self.kernel.is_trivial()

    def __str__(self) -> str:
        return f"tau_S on {self.group}, S {self.s}"


class Verdict(BaseModel):
    """ A boolean answer with an optional certificate. Truthiness is the answer. """
    holds: bool
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    @property
    def witness_text(self) -> str | None:
        return None if self.witness is None else str(self.witness)


def _require_in(topo: PrecompactTopology, H: Subgroup) -> None:
    if H.parent != topo.group:
        raise GroupMismatchError(f"{H} is not a subgroup of {topo.group}")


def _first_outside(big: Subgroup, small: Subgroup):
    for c in subgroup_coords(big):
        x = big.parent.reduce(c)
        if x not in small:
            return x
    return None


def closure(topo: PrecompactTopology, H: Subgroup) -> Subgroup:
    _require_in(topo, H)
    return annihilator_in_group(topo.group, annihilator_in_dual(topo.s, H))


def is_closed(topo: PrecompactTopology, H: Subgroup) -> Verdict:
    closed = closure(topo, H)
    holds = closed == H
    # every subgroup of a finite group has finite index, so this is an equivalence
    by_annihilator = annihilator_in_dual(full_dual(topo.group), H).issubset(topo.s)
    if holds != by_annihilator:
        raise InconsistencyError(f"{H} in {topo}: closure says closed={holds}, A(G^,H) <= S says {by_annihilator}")
    return Verdict(holds=holds, witness=None if holds else _first_outside(closed, H),
                   note="" if holds else "element of the closure outside H")


def is_dense(topo: PrecompactTopology, H: Subgroup) -> Verdict:
    _require_in(topo, H)
    meet = subgroup_intersection(annihilator_in_dual(full_dual(topo.group), H), topo.s)
    holds = meet.is_trivial()
    by_closure = closure(topo, H).is_whole()
    if holds != by_closure:
        raise InconsistencyError(f"{H} in {topo}: A(G^,H) meets S trivially={holds}, closure is G={by_closure}")
    if topo.s.order <= params.SCAN_CROSSCHECK_LIMIT:
        by_images = all(character_image_order(chi, H) == character_image_order(chi) for chi in characters(topo.s))
        if holds != by_images:
            raise InconsistencyError(f"{H} in {topo}: annihilator criterion {holds}, image criterion {by_images}")
    witness = None if holds else meet.generators()[0]
    return Verdict(holds=holds, witness=witness, note="" if holds else "non-zero character of S vanishing on H")


def is_dense_in(topo: PrecompactTopology, H: Subgroup, N: Subgroup) -> Verdict:
    _require_in(topo, N)
    if not H.issubset(N):
        raise PreconditionError(f"{H} is not contained in {N}")
    closed = closure(topo, H)
    holds = N.issubset(closed)
    by_closures = closure(topo, N) == closed
    if holds != by_closures:
        raise InconsistencyError(f"{H} in {N} under {topo}: containment {holds}, equal closures {by_closures}")
    return Verdict(holds=holds, witness=None if holds else _first_outside(N, closed),
                   note="" if holds else "element of N outside the closure of H")


@lru_cache(maxsize=4096)
def _closed_family(topo: PrecompactTopology, bound: int | None) -> tuple[Subgroup, ...]:
    subgroups = enumerate_subgroups(topo.group, bound)
    family = tuple(H for H in subgroups if closure(topo, H) == H)
    up_set = tuple(H for H in subgroups if topo.kernel.issubset(H))
    if family != up_set:
        raise InconsistencyError(f"closed subgroups of {topo} differ from the subgroups containing {topo.kernel}")
    return family


def closed_family(topo: PrecompactTopology, bound: int | None = None) -> list[Subgroup]:
    return list(_closed_family(topo, bound))


def same_closed_family(topo1: PrecompactTopology, topo2: PrecompactTopology, bound: int | None = None) -> Verdict:
    if topo1.group != topo2.group:
        raise GroupMismatchError(f"topologies on different groups: {topo1.group} and {topo2.group}")
    family1, family2 = closed_family(topo1, bound), closed_family(topo2, bound)
    by_family = family1 == family2

    # all subgroups of the finite dual are closed, so the closures of L∩S_i are the intersections themselves
    S1, S2 = topo1.s, topo2.s
    candidates = [S1, S2] + enumerate_subgroups(S1.parent, bound)
    distinguishing = next((L for L in candidates if subgroup_intersection(L, S1) != subgroup_intersection(L, S2)), None)
    by_criterion = distinguishing is None
    if by_family != by_criterion:
        raise InconsistencyError(f"families equal={by_family} but intersection criterion says {by_criterion} for {S1}, {S2}")
    if by_family:
        return Verdict(holds=True)
    differing = sorted(set(family1).symmetric_difference(family2), key=subgroup_sort_key)
    return Verdict(holds=False, witness=distinguishing,
                   note=f"L meets S1 and S2 differently; H = {differing[0]} is closed in only one of them")


def _same_family_dual_subgroups(topo: PrecompactTopology, bound: int | None) -> list[DualSubgroup]:
    target = closed_family(topo, bound)
    return [T for T in enumerate_subgroups(topo.s.parent, bound)
            if closed_family(PrecompactTopology.of(T), bound) == target]


def greatest_same_family(topo: PrecompactTopology, bound: int | None = None) -> DualSubgroup:
    """ The sum of every T >= S with the same closed subgroups as S, re-verified afterwards. """
    same = [T for T in _same_family_dual_subgroups(topo, bound) if topo.s.issubset(T)]
    M = reduce(subgroup_sum, same, topo.s)
    if closed_family(PrecompactTopology.of(M), bound) != closed_family(topo, bound):
        raise InconsistencyError(f"sum {M} of same-family supergroups of {topo.s} changes the closed family")
    return M


def minimal_same_family(topo: PrecompactTopology, bound: int | None = None) -> list[DualSubgroup]:
    same = _same_family_dual_subgroups(topo, bound)
    return [T for T in same if not any(U != T and U.issubset(T) for U in same)]


def is_totally_dense(S: DualSubgroup, bound: int | None = None) -> Verdict:
    # finite duals are discrete, so density in K means S∩K = K
    for K in enumerate_subgroups(S.parent, bound):
        if subgroup_intersection(S, K) != K:
            return Verdict(holds=False, witness=K, note="S∩K is not dense in K")
    return Verdict(holds=True)


def is_sc(topo: PrecompactTopology, bound: int | None = None) -> Verdict:
    """ Every subgroup of (G, tau_S) is closed. """
    not_closed = next((H for H in enumerate_subgroups(topo.group, bound) if closure(topo, H) != H), None)
    holds = not_closed is None
    totally_dense = bool(is_totally_dense(topo.s, bound))
    if not holds == totally_dense == topo.s.is_whole():
        raise InconsistencyError(f"{topo}: all closed={holds}, totally dense={totally_dense}, S = G^={topo.s.is_whole()}")
    return Verdict(holds=holds, witness=not_closed, note="" if holds else "subgroup that is not closed")


def is_topologically_simple(topo: PrecompactTopology, bound: int | None = None) -> Verdict:
    """No closed subgroups other than G and possibly {0}; the anti-discrete topology counts as simple.

    Three verdicts must coincide: the definition, L∩S = {0} for every proper L <= G^,
    and injectivity of every non-zero character in S.
    """
    proper_closed = next((H for H in closed_family(topo, bound) if not (H.is_trivial() or H.is_whole())), None)
    by_definition = proper_closed is None
    by_criterion = all(subgroup_intersection(L, topo.s).is_trivial()
                       for L in enumerate_subgroups(topo.s.parent, bound) if not L.is_whole())
    non_injective = next((chi for chi in characters(topo.s) if not chi.is_trivial() and not is_injective(chi)), None)
    by_injectivity = non_injective is None
    if not by_definition == by_criterion == by_injectivity:
        raise InconsistencyError(f"{topo}: simplicity by definition={by_definition}, "
                                 f"by intersections={by_criterion}, by injectivity={by_injectivity}")
    if by_definition:
        return Verdict(holds=True)
    return Verdict(holds=False, witness=proper_closed, note=f"non-injective character {non_injective}")


def is_topologically_essential(S: DualSubgroup, bound: int | None = None) -> Verdict:
    for B in enumerate_subgroups(S.parent, bound):
        if not B.is_trivial() and subgroup_intersection(S, B).is_trivial():
            return Verdict(holds=False, witness=B, note="non-trivial subgroup of G^ meeting S trivially")
    return Verdict(holds=True)


def has_no_proper_dense_subgroup(topo: PrecompactTopology, bound: int | None = None) -> Verdict:
    for H in enumerate_subgroups(topo.group, bound):
        if not H.is_whole() and is_dense(topo, H):
            return Verdict(holds=False, witness=H, note="proper dense subgroup")
    return Verdict(holds=True)


def essential_equivalence(topo: PrecompactTopology, bound: int | None = None) -> tuple[bool, bool]:
    """ (S essential in G^, whether that matches the absence of proper dense subgroups). """
    essential = bool(is_topologically_essential(topo.s, bound))
    return essential, essential == bool(has_no_proper_dense_subgroup(topo, bound))


def topology_closing_family(G: FiniteAbelianGroup, family: Iterable[Subgroup]) -> PrecompactTopology:
    """ tau_S with S the sum of A(G^,H_i): the coarsest of this form in which every H_i is closed. """
    annihilators = []
    for H in family:
        if H.parent != G:
            raise GroupMismatchError(f"{H} is not a subgroup of {G}")
        annihilators.append(annihilator_in_dual(full_dual(G), H))
    return PrecompactTopology.of(reduce(subgroup_sum, annihilators, zero_dual(G)))


def topologies_closing(G: FiniteAbelianGroup, H: Subgroup, bound: int | None = None) -> list[DualSubgroup]:
    """ Every S <= G^ for which H is tau_S-closed. """
    if H.parent != G:
        raise GroupMismatchError(f"{H} is not a subgroup of {G}")
    dual_subgroups = enumerate_subgroups(dual_group(G), bound)
    closing = [S for S in dual_subgroups if is_closed(PrecompactTopology.of(S), H)]
    A = annihilator_in_dual(full_dual(G), H)
    if closing != [S for S in dual_subgroups if A.issubset(S)]:
        raise InconsistencyError(f"topologies closing {H} differ from the subgroups containing {A}")
    return closing


def maximal_subgroups(G: FiniteAbelianGroup, bound: int | None = None) -> list[Subgroup]:
    subgroups = enumerate_subgroups(G, bound)
    maximal = [H for H in subgroups if not H.is_whole()
               and not any(K != H and not K.is_whole() and H.issubset(K) for K in subgroups)]
    if any(not isprime(H.index) for H in maximal):
        raise InconsistencyError(f"maximal subgroup of {G} with non-prime index")
    return maximal


def maximal_dichotomy(topo: PrecompactTopology, H: Subgroup) -> Verdict:
    """ A maximal proper subgroup is exactly one of dense, closed. """
    dense, closed = bool(is_dense(topo, H)), bool(is_closed(topo, H))
    return Verdict(holds=dense != closed, witness=None if dense != closed else H,
                   note=f"dense={dense}, closed={closed}")


class TopologyReport(BaseModel):
    group: str
    s_generators: list[str]
    verdicts: dict[str, bool]
    kernel: str
    closed_family: list[str]
    witnesses: dict[str, str | None]


def classification_verdicts(topo: PrecompactTopology, bound: int | None = None) -> dict[str, Verdict]:
    """ The five classification verdicts, each with its certificate when it fails. """
    return {
        "hausdorff": Verdict(holds=topo.hausdorff, witness=None if topo.hausdorff else topo.kernel,
                             note="" if topo.hausdorff else "kernel of the topology"),
        "sc": is_sc(topo, bound),
        "totally_dense": is_totally_dense(topo.s, bound),
        "simple": is_topologically_simple(topo, bound),
        "essential": is_topologically_essential(topo.s, bound),
    }


def classify(topo: PrecompactTopology, bound: int | None = None) -> TopologyReport:
    verdicts = classification_verdicts(topo, bound)
    return TopologyReport(
        group=str(topo.group),
        s_generators=[str(g) for g in topo.s.generators()],
        verdicts={name: verdict.holds for name, verdict in verdicts.items()},
        kernel=str(topo.kernel),
        closed_family=[str(H) for H in closed_family(topo, bound)],
        witnesses={name: verdict.witness_text for name, verdict in verdicts.items()},
    )


def topology_from_dual(G: FiniteAbelianGroup, S: DualSubgroup) -> PrecompactTopology:
    require_dual(S, G)
    return PrecompactTopology.of(S)
