"""Brute-force ground truth and the exhaustive theorem suites.

The definition-level routines here only tabulate character values through duality.evaluate and scan
elements; they never call the closure formula they are used to check.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, repeat
from math import lcm
from multiprocessing import Pool
from typing import Callable, Iterable

from pydantic import BaseModel
from sympy import divisors

import params
from core_group import (
    Coords,
    Element,
    FiniteAbelianGroup,
    Subgroup,
    abelian_groups_of_order_at_most,
    enumerate_subgroups,
    subgroup_coords,
    subgroup_intersection,
    subgroup_sum,
)
from database import write_log, write_report
from duality import (
    Character,
    annihilator_in_dual,
    annihilator_in_group,
    check_duality_invariants,
    dual_group,
    evaluate,
    full_dual,
    reflexivity_check,
)
from errors import CapacityError, InconsistencyError, PrecompactError, UnknownSuiteError
from topology import (
    PrecompactTopology,
    closed_family,
    closure,
    essential_equivalence,
    greatest_same_family,
    is_closed,
    is_dense_in,
    is_sc,
    is_topologically_simple,
    maximal_dichotomy,
    maximal_subgroups,
    minimal_same_family,
)
from zee import (
    CONTINUUM,
    INFINITY,
    IntSubgroup,
    SupernaturalNumber,
    TorusSubgroupDesc,
    M_s,
    c_set_contains,
    classify_int,
    closure_by_divisor_scan,
    closure_int,
    is_closed_int,
    is_dense_int,
    is_maximal_dichotomy,
    lcm_closure,
    lcm_set,
    m_s,
    same_closed_family_int,
    supernatural_grid,
)

SUITE_IDS = [
    "closure_formula",
    "closure_corollary",
    "density_criterion",
    "finite_index_converse",
    "coset_closure",
    "same_family_criterion",
    "dense_in_relative",
    "lemma_2_1_isomorphisms",
    "sc_totally_dense",
    "bounded_order_bohr",
    "simple_equivalences",
    "essential_no_dense",
    "bohr_all_closed",
    "annihilator_reflexivity",
    "greatest_exists",
    "zee_divisor_oracle",
    "zee_lcm_closure",
    "zee_torsion_determinism",
]
ALIASES = {"reflexivity": "annihilator_reflexivity"}

ZEE_EXPONENTS = (0, 1, 2, 3, INFINITY)
LCM_UNIVERSE_LIMIT = 60
LCM_SET_SIZE = 5


class Failure(BaseModel):
    group: str
    h: str | None = None
    s: str | None = None
    detail: str


class TheoremReport(BaseModel):
    theorem_id: str
    max_order: int
    instances_checked: int
    failures: list[Failure] = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [f"SUITE {self.theorem_id} CHECKED {self.instances_checked} FAILURES {len(self.failures)}"]
        if self.failures:
            first = self.failures[0]
            lines.append(f"  WITNESS group={first.group} H={first.h} S={first.s}")
            lines.append(f"  DETAIL {first.detail}")
        return "\n".join(lines)


## Definition-level ground truth

class PairingTable:
    """ Every value chi_c(x) of one finite group, tabulated once through duality.evaluate. """

    def __init__(self, G: FiniteAbelianGroup):
        self.group = G
        self.zero = (0,) * G.rank
        self.points = frozenset(x.coords for x in G.elements())
        self.values = {
            c: {x: evaluate(Character.model_construct(parent=G, coeffs=c), Element.model_construct(coords=x))
                for x in self.points}
            for c in self.points
        }
        self.kernels = {c: frozenset(x for x, v in row.items() if v.is_zero()) for c, row in self.values.items()}

    def image(self, c: Coords, points: Iterable[Coords]) -> frozenset:
        row = self.values[c]
        return frozenset(row[x] for x in points)

    def closure_points(self, s_points: frozenset, h_points: frozenset) -> frozenset:
        """ {g : chi(g) = 0 for every chi in S vanishing on H}. """
        result = self.points
        for c in s_points:
            kernel = self.kernels[c]
            if h_points <= kernel:
                result = result & kernel
        return result

    def dense(self, s_points: frozenset, h_points: frozenset, n_points: frozenset | None = None) -> bool:
        """ chi[H] = chi[N] for every chi in S (N defaults to G). """
        n_points = self.points if n_points is None else n_points
        return all(self.image(c, h_points) == self.image(c, n_points) for c in s_points)


@lru_cache(maxsize=4)
def pairing_table(G: FiniteAbelianGroup) -> PairingTable:
    return PairingTable(G)


@lru_cache(maxsize=65536)
def _points(H: Subgroup) -> frozenset:
    return frozenset(subgroup_coords(H))


def _span(G: FiniteAbelianGroup, points: Iterable[Coords]) -> Subgroup:
    return Subgroup.span(G, (Element.model_construct(coords=x) for x in sorted(points)))


def closure_by_definition(topo: PrecompactTopology, H: Subgroup) -> Subgroup:
    """ The tau_S-closure of H as the common zero set of A(S,H), by full scan. """
    table = pairing_table(topo.group)
    return _span(topo.group, table.closure_points(_points(topo.s), _points(H)))


def dense_by_definition(topo: PrecompactTopology, H: Subgroup) -> bool:
    return pairing_table(topo.group).dense(_points(topo.s), _points(H))


## Finite suites: one unit of work per group

class _GroupCase:
    def __init__(self, G: FiniteAbelianGroup):
        self.group = G
        self.subgroups = enumerate_subgroups(G, G.order)
        self.dual_subgroups = enumerate_subgroups(dual_group(G), G.order)
        self.topologies = [PrecompactTopology.of(S) for S in self.dual_subgroups]
        self.table = pairing_table(G)
        self.count = 0
        self.failures: list[Failure] = []

    def check(self, h: object, s: object, run: Callable[..., str | None], *args) -> None:
        self.count += 1
        try:
            detail = run(self, *args)
        except InconsistencyError as exc:
            detail = f"inconsistent engine: {exc}"
        if detail:
            self.failures.append(Failure(group=str(self.group), h=None if h is None else str(h),
                                         s=None if s is None else str(s), detail=detail))

    def closure_points(self, S: Subgroup, H: Subgroup) -> frozenset:
        return self.table.closure_points(_points(S), _points(H))

    def closed_by_definition(self, S: Subgroup, H: Subgroup) -> bool:
        return self.closure_points(S, H) == _points(H)

    def span(self, points: Iterable[Coords]) -> Subgroup:
        return _span(self.group, points)


def _closure_matches_definition(case: _GroupCase, topo: PrecompactTopology, H: Subgroup) -> str | None:
    formula = closure(topo, H)
    expected = case.closure_points(topo.s, H)
    if _points(formula) != expected:
        return f"A(G,A(S,H)) = {formula}, definition gives {case.span(expected)}"


def _closure_formula(case: _GroupCase) -> None:
    for topo in case.topologies:
        for H in case.subgroups:
            case.check(H, topo.s, _closure_matches_definition, topo, H)


def _closure_three_ways(case: _GroupCase, topo: PrecompactTopology, H: Subgroup) -> str | None:
    by_formula = _points(closure(topo, H))
    by_annihilator = case.closure_points(topo.s, H)
    h_points = _points(H)
    images = {c: case.table.image(c, h_points) for c in _points(topo.s)}
    by_images = frozenset(x for x in case.table.points
                          if all(case.table.values[c][x] in image for c, image in images.items()))
    if not by_formula == by_annihilator == by_images:
        return (f"closure {case.span(by_formula)}, zero set of A(S,H) {case.span(by_annihilator)}, "
                f"image criterion {case.span(by_images)}")


def _closure_corollary(case: _GroupCase) -> None:
    for topo in case.topologies:
        for H in case.subgroups:
            case.check(H, topo.s, _closure_three_ways, topo, H)


def _density_three_ways(case: _GroupCase, topo: PrecompactTopology, H: Subgroup, maximal: bool) -> str | None:
    by_annihilator = subgroup_intersection(annihilator_in_dual(full_dual(case.group), H), topo.s).is_trivial()
    by_images = case.table.dense(_points(topo.s), _points(H))
    by_closure = case.closure_points(topo.s, H) == case.table.points
    if not by_annihilator == by_images == by_closure:
        return f"A(G^,H)∩S trivial={by_annihilator}, images equal={by_images}, closure is G={by_closure}"
    if maximal:
        dichotomy = maximal_dichotomy(topo, H)
        if not dichotomy:
            return f"maximal subgroup fails the dense/closed dichotomy: {dichotomy.note}"


def _density_criterion(case: _GroupCase) -> None:
    maximal = set(maximal_subgroups(case.group, case.group.order))
    for topo in case.topologies:
        for H in case.subgroups:
            case.check(H, topo.s, _density_three_ways, topo, H, H in maximal)


def _closed_iff_annihilator_inside(case: _GroupCase, topo: PrecompactTopology, H: Subgroup) -> str | None:
    closed = case.closed_by_definition(topo.s, H)
    contained = annihilator_in_dual(full_dual(case.group), H).issubset(topo.s)
    if closed != contained:
        return f"closed by definition={closed}, A(G^,H) <= S is {contained}"


def _finite_index_converse(case: _GroupCase) -> None:
    for topo in case.topologies:
        for H in case.subgroups:
            case.check(H, topo.s, _closed_iff_annihilator_inside, topo, H)


def _closure_is_coset_sum(case: _GroupCase, topo: PrecompactTopology, H: Subgroup) -> str | None:
    coset_sum = subgroup_sum(H, annihilator_in_group(case.group, topo.s))
    expected = case.closure_points(topo.s, H)
    if _points(coset_sum) != expected:
        return f"H + A(G,S) = {coset_sum}, closure by definition {case.span(expected)}"


def _coset_closure(case: _GroupCase) -> None:
    for topo in case.topologies:
        for H in case.subgroups:
            case.check(H, topo.s, _closure_is_coset_sum, topo, H)


def _families_match_meets(case: _GroupCase, i: int, j: int, families: list, meets: list) -> str | None:
    by_family = families[i] == families[j]
    by_meets = meets[i] == meets[j]
    if by_family != by_meets:
        return f"same closed subgroups={by_family}, L∩S1 = L∩S2 for every L is {by_meets}"
    if i == j:
        topo = case.topologies[i]
        engine = frozenset(case.subgroups.index(H) for H in closed_family(topo, case.group.order))
        if engine != families[i]:
            return f"closed_family of {topo.s} differs from the closed subgroups found by definition"


def _same_family_criterion(case: _GroupCase) -> None:
    families = [frozenset(i for i, H in enumerate(case.subgroups) if case.closed_by_definition(S, H))
                for S in case.dual_subgroups]
    # all subgroups of a finite dual are closed, so the closures of L∩S_i are the intersections
    meets = [tuple(_points(L) & _points(S) for L in case.dual_subgroups) for S in case.dual_subgroups]
    for i, S1 in enumerate(case.dual_subgroups):
        for j, S2 in enumerate(case.dual_subgroups):
            case.check(None, f"{S1} vs {S2}", _families_match_meets, i, j, families, meets)


def _relative_density(case: _GroupCase, topo: PrecompactTopology, H: Subgroup, N: Subgroup) -> str | None:
    inside_closure = _points(N) <= case.closure_points(topo.s, H)
    by_images = case.table.dense(_points(topo.s), _points(H), _points(N))
    by_closures = closure(topo, N) == closure(topo, H)
    by_engine = bool(is_dense_in(topo, H, N))
    if not inside_closure == by_images == by_closures == by_engine:
        return (f"N inside closure={inside_closure}, images equal on N={by_images}, "
                f"equal closures={by_closures}, is_dense_in={by_engine}")


def _dense_in_relative(case: _GroupCase) -> None:
    for topo in case.topologies:
        for N in case.subgroups:
            for H in case.subgroups:
                if H.issubset(N):
                    case.check(f"{H} in {N}", topo.s, _relative_density, topo, H, N)


def _duality_invariants_hold(case: _GroupCase, H: Subgroup, S: Subgroup) -> str | None:
    report = check_duality_invariants(case.group, H, S)
    if not report.passed:
        return "; ".join(f"{check.name}: {check.detail}" for check in report.failures())


def _duality_isomorphisms(case: _GroupCase) -> None:
    for S in case.dual_subgroups:
        for H in case.subgroups:
            case.check(H, S, _duality_invariants_hold, H, S)


def _all_closed_by_definition(case: _GroupCase, S: Subgroup) -> bool:
    return all(case.closed_by_definition(S, H) for H in case.subgroups)


def _sc_iff_totally_dense(case: _GroupCase, topo: PrecompactTopology) -> str | None:
    sc = _all_closed_by_definition(case, topo.s)
    totally_dense = all(_points(K) <= _points(topo.s) for K in case.dual_subgroups)
    engine = bool(is_sc(topo, case.group.order))
    if not sc == totally_dense == engine:
        return f"every subgroup closed={sc}, S totally dense={totally_dense}, is_sc={engine}"


def _sc_totally_dense(case: _GroupCase) -> None:
    for topo in case.topologies:
        case.check(None, topo.s, _sc_iff_totally_dense, topo)


def _sc_iff_bohr(case: _GroupCase, topo: PrecompactTopology) -> str | None:
    sc = _all_closed_by_definition(case, topo.s)
    bohr = topo == PrecompactTopology.bohr(case.group)
    if not sc == topo.s.is_whole() == bohr:
        return f"every subgroup closed={sc}, S = G^ is {topo.s.is_whole()}"


def _bounded_order_bohr(case: _GroupCase) -> None:
    for topo in case.topologies:
        case.check(None, topo.s, _sc_iff_bohr, topo)


def _simple_four_ways(case: _GroupCase, topo: PrecompactTopology) -> str | None:
    zero_only = frozenset({case.table.zero})
    s_points = _points(topo.s)
    by_definition = all(H.is_trivial() or H.is_whole() or not case.closed_by_definition(topo.s, H)
                        for H in case.subgroups)
    by_meets = all(_points(L) & s_points == zero_only for L in case.dual_subgroups if not L.is_whole())
    by_injectivity = all(case.table.kernels[c] == zero_only for c in s_points if c != case.table.zero)
    engine = bool(is_topologically_simple(topo, case.group.order))
    if not by_definition == by_meets == by_injectivity == engine:
        return (f"simple by definition={by_definition}, proper L meet S trivially={by_meets}, "
                f"non-zero characters injective={by_injectivity}, engine={engine}")


def _simple_equivalences(case: _GroupCase) -> None:
    for topo in case.topologies:
        case.check(None, topo.s, _simple_four_ways, topo)


def _essential_iff_no_dense(case: _GroupCase, topo: PrecompactTopology) -> str | None:
    s_points = _points(topo.s)
    essential = all(len(_points(B) & s_points) > 1 for B in case.dual_subgroups if not B.is_trivial())
    no_dense = not any(case.table.dense(s_points, _points(H)) for H in case.subgroups if not H.is_whole())
    engine = essential_equivalence(topo, case.group.order)
    if essential != no_dense or engine != (essential, True):
        return f"S essential={essential}, no proper dense subgroup={no_dense}, engine={engine}"


def _essential_no_dense(case: _GroupCase) -> None:
    for topo in case.topologies:
        case.check(None, topo.s, _essential_iff_no_dense, topo)


def _closed_under_bohr(case: _GroupCase, bohr: PrecompactTopology, H: Subgroup) -> str | None:
    by_definition = case.closed_by_definition(bohr.s, H)
    engine = bool(is_closed(bohr, H))
    if not (by_definition and engine):
        return f"closed by definition={by_definition}, is_closed={engine}"


def _bohr_all_closed(case: _GroupCase) -> None:
    bohr = PrecompactTopology.bohr(case.group)
    for H in case.subgroups:
        case.check(H, bohr.s, _closed_under_bohr, bohr, H)


def _double_annihilators(case: _GroupCase, H: Subgroup, S: Subgroup) -> str | None:
    G = case.group
    A = annihilator_in_dual(full_dual(G), H)
    problems = []
    if not reflexivity_check(G, H):
        problems.append(f"A(G,A(G^,H)) = {annihilator_in_group(G, A)} differs from H")
    S_back = annihilator_in_dual(full_dual(G), annihilator_in_group(G, S))
    if S_back != S:
        problems.append(f"A(G^,A(G,S)) = {S_back} differs from S")
    if A.order * H.order != G.order:
        problems.append(f"|A(G^,H)| * |H| = {A.order * H.order}, |G| = {G.order}")
    return "; ".join(problems)


def _annihilator_reflexivity(case: _GroupCase) -> None:
    for H, S in zip(case.subgroups, case.dual_subgroups):
        case.check(H, S, _double_annihilators, H, S)


def _greatest_is_itself(case: _GroupCase, topo: PrecompactTopology) -> str | None:
    bound = case.group.order
    M = greatest_same_family(topo, bound)
    if not topo.s.issubset(M):
        return f"greatest same-family subgroup {M} does not contain S"
    same_family = all(case.closed_by_definition(M, H) == case.closed_by_definition(topo.s, H) for H in case.subgroups)
    if not same_family:
        return f"greatest same-family subgroup {M} has a different closed family by definition"
    if M != topo.s:
        return f"greatest same-family subgroup {M} differs from S in a finite group"
    minimal = minimal_same_family(topo, bound)
    if minimal != [topo.s]:
        return f"minimal same-family subgroups {[str(T) for T in minimal]}, expected only S"


def _greatest_exists(case: _GroupCase) -> None:
    for topo in case.topologies:
        case.check(None, topo.s, _greatest_is_itself, topo)


_GROUP_SUITES: dict[str, Callable[[_GroupCase], None]] = {
    "closure_formula": _closure_formula,
    "closure_corollary": _closure_corollary,
    "density_criterion": _density_criterion,
    "finite_index_converse": _finite_index_converse,
    "coset_closure": _coset_closure,
    "same_family_criterion": _same_family_criterion,
    "dense_in_relative": _dense_in_relative,
    "lemma_2_1_isomorphisms": _duality_isomorphisms,
    "sc_totally_dense": _sc_totally_dense,
    "bounded_order_bohr": _bounded_order_bohr,
    "simple_equivalences": _simple_equivalences,
    "essential_no_dense": _essential_no_dense,
    "bohr_all_closed": _bohr_all_closed,
    "annihilator_reflexivity": _annihilator_reflexivity,
    "greatest_exists": _greatest_exists,
}


def check_group(suite_id: str, G: FiniteAbelianGroup) -> tuple[int, list[Failure]]:
    case = _GroupCase(G)
    _GROUP_SUITES[suite_id](case)
    return case.count, case.failures


## Integer suites

def zee_grid() -> list[SupernaturalNumber]:
    return list(supernatural_grid(params.ZEE_PRIMES, ZEE_EXPONENTS))


def _zee_failure(H: IntSubgroup | None, S: TorusSubgroupDesc | str, detail: str) -> Failure:
    return Failure(group="Z", h=None if H is None else str(H), s=str(S), detail=detail)


def check_zee_divisor_oracle(supernaturals: Iterable[SupernaturalNumber], k_max: int) -> tuple[int, list[Failure]]:
    count, failures = 0, []
    primes = _primes_up_to(k_max)
    for torsion in supernaturals:
        S = TorusSubgroupDesc(torsion=torsion)
        for H in _int_subgroups(k_max):
            count += 1
            k = H.k
            try:
                closed, scanned = closure_int(S, H), closure_by_divisor_scan(S, k)
                if closed.k != scanned.k:
                    failures.append(_zee_failure(H, S, f"closure {closed}, divisor scan {scanned}"))
                elif k in primes and not is_maximal_dichotomy(S, k):
                    failures.append(_zee_failure(H, S, "pZ is not exactly one of dense, closed"))
            except InconsistencyError as exc:
                failures.append(_zee_failure(H, S, f"inconsistent engine: {exc}"))
    return count, failures


@lru_cache(maxsize=16)
def _int_subgroups(k_max: int) -> tuple[IntSubgroup, ...]:
    return tuple(IntSubgroup(k=k) for k in range(1, k_max + 1))


@lru_cache(maxsize=16)
def _primes_up_to(n: int) -> frozenset[int]:
    return frozenset(p for p in range(2, n + 1) if len(_divisors(p)) == 2)


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in divisors(n))


def _lcm_closure_matches_subsets(C: tuple[int, ...], limit: int) -> str | None:
    closure_value = lcm_closure(C)
    subset_lcms = {lcm(*F) for r in range(1, len(C) + 1) for F in combinations(C, r)}
    brute = {n for m in subset_lcms for n in _divisors(m) if n <= limit}
    if not closure_value.is_finite or closure_value.value != lcm_set(C):
        return f"lcm-closure {closure_value} is not lcm(C) = {lcm_set(C)}"
    claimed = {n for n in _divisors(closure_value.value) if n <= limit}
    if brute != claimed:
        return f"divisors of subset lcms {sorted(brute ^ claimed)[:5]} disagree with {closure_value}"
    if not all(closure_value.divides(n) for n in brute):
        return f"{closure_value} rejects a divisor of a subset lcm"


def _lcm_sets_starting_at(m: int, universe: int) -> tuple[int, list[Failure]]:
    count, failures = 0, []
    limit = universe * universe
    larger = range(m + 1, universe + 1)
    for r in range(LCM_SET_SIZE):
        for rest in combinations(larger, r):
            C = (m,) + rest
            count += 1
            detail = _lcm_closure_matches_subsets(C, limit)
            if detail:
                failures.append(_zee_failure(None, f"C={list(C)}", detail))
    return count, failures


def check_zee_lcm_closure(universe: int) -> tuple[int, list[Failure]]:
    count, failures = 0, []
    for m in range(1, universe + 1):
        n, found = _lcm_sets_starting_at(m, universe)
        count += n
        failures += found
    return count, failures


def _outcomes(S: TorusSubgroupDesc, H: IntSubgroup) -> tuple:
    return closure_int(S, H), is_closed_int(S, H), is_dense_int(S, H), c_set_contains(S, H.k)


def check_zee_torsion_determinism(supernaturals: Iterable[SupernaturalNumber], k_max: int) -> tuple[int, list[Failure]]:
    count, failures = 0, []
    for torsion in supernaturals:
        variants = [TorusSubgroupDesc(torsion=torsion, free_rank=r) for r in (0, 1, CONTINUUM)]
        for k in range(1, k_max + 1):
            count += 1
            H = IntSubgroup(k=k)
            try:
                if len({_outcomes(S, H) for S in variants}) != 1:
                    failures.append(_zee_failure(H, variants[0], "closure or verdict depends on the free rank"))
                elif k == 1:
                    detail = _free_rank_invariants(variants)
                    if detail:
                        failures.append(_zee_failure(H, variants[0], detail))
            except InconsistencyError as exc:
                failures.append(_zee_failure(H, variants[0], f"inconsistent engine: {exc}"))
    return count, failures


def _free_rank_invariants(variants: list[TorusSubgroupDesc]) -> str | None:
    records = {tuple(classify_int(S).model_dump(exclude={"hausdorff"}).values()) for S in variants}
    if len(records) != 1:
        return "classification depends on the free rank"
    if len({m_s(S) for S in variants}) != 1 or len({M_s(S) for S in variants}) != 1:
        return "mS or MS depends on the free rank"
    if any(M_s(m_s(S)) != M_s(S) for S in variants):
        return "M_s(m_s(S)) differs from M_s(S)"
    if not all(same_closed_family_int(S, T) for S in variants for T in variants):
        return "closed families differ across free ranks"


## Driver

def _units(suite_id: str, max_order: int) -> list:
    if suite_id in _GROUP_SUITES:
        if max_order > params.MAX_ORDER:
            raise CapacityError(max_order, params.MAX_ORDER, what=f"suite {suite_id}")
        return abelian_groups_of_order_at_most(max_order)
    if suite_id == "zee_lcm_closure":
        return list(range(1, min(max_order, LCM_UNIVERSE_LIMIT) + 1))
    return zee_grid()


def _check_unit(suite_id: str, unit, max_order: int) -> tuple[int, list[Failure]]:
    if suite_id in _GROUP_SUITES:
        return check_group(suite_id, unit)
    if suite_id == "zee_divisor_oracle":
        return check_zee_divisor_oracle([unit], max_order)
    if suite_id == "zee_lcm_closure":
        return _lcm_sets_starting_at(unit, min(max_order, LCM_UNIVERSE_LIMIT))
    return check_zee_torsion_determinism([unit], max_order)


def resolve_suite(theorem_id: str) -> str:
    suite_id = ALIASES.get(theorem_id, theorem_id)
    if suite_id not in SUITE_IDS:
        raise UnknownSuiteError(theorem_id)
    return suite_id


def run_suite(theorem_id: str, max_order: int, jobs: int | None = None) -> TheoremReport:
    """Run one suite over its whole corpus up to max_order.

    Finite suites visit every abelian group of order <= max_order (one per isomorphism class) in
    canonical order; the integer suites read max_order as the bound on k. Results merge in unit order,
    so the report does not depend on the number of workers.
    """
    suite_id = resolve_suite(theorem_id)
    jobs = params.JOBS if jobs is None else jobs
    units = _units(suite_id, max_order)
    write_log("oracle", "suite", f"Starting {suite_id} up to {max_order} over {len(units)} units with {jobs} jobs")

    if jobs > 1:
        with Pool(processes=jobs) as pool:
            results = pool.starmap(_check_unit, zip(repeat(suite_id), units, repeat(max_order)),
                                   chunksize=max(1, len(units) // (jobs * 8)))
    else:
        results = [_check_unit(suite_id, unit, max_order) for unit in units]

    report = TheoremReport(
        theorem_id=suite_id,
        max_order=max_order,
        instances_checked=sum(n for n, _ in results),
        failures=[failure for _, found in results for failure in found],
    )
    write_report(suite_id, max_order, report.model_dump())
    write_log("oracle", "suite", f"Finished {suite_id}: {report.instances_checked} checked, {len(report.failures)} failures")
    return report


def run_all(max_order: int, jobs: int | None = None) -> list[TheoremReport]:
    reports = []
    for suite_id in SUITE_IDS:
        try:
            reports.append(run_suite(suite_id, max_order, jobs))
        except PrecompactError as exc:
            write_log("oracle", "error", f"{suite_id}: {exc}")
            raise
    return reports
