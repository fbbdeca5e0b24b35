"""Exact arithmetic for finite abelian groups.

A group is kept in invariant-factor form Z(d_1) x ... x Z(d_k) with d_1 | ... | d_k.
A subgroup H is stored through its preimage lattice L in Z^k (L contains d_i e_i for every i):
the columns of the Hermite normal form of L are a deterministic function of H as a set,
so two generator lists with the same span canonicalize identically.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import ZZ, Matrix, diag, factorint, primefactors
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors, smith_normal_decomp
from sympy.utilities.iterables import partitions

import params
from errors import CapacityError, GroupMismatchError, InconsistencyError, MalformedElementError, SpecParseError

Coords = tuple[int, ...]


class TorusValue(BaseModel):
    """ An element of Q/Z as a reduced fraction in [0, 1). """
    model_config = ConfigDict(frozen=True)

    numerator: int = 0
    denominator: int = 1

    @model_validator(mode="after")
    def _check_reduced(self):
        if self.denominator < 1 or not 0 <= self.numerator < self.denominator:
            raise ValueError(f"{self.numerator}/{self.denominator} does not lie in [0, 1)")
        if gcd(self.numerator, self.denominator) != 1:
            raise ValueError(f"{self.numerator}/{self.denominator} is not reduced")
        return self

    @classmethod
    def of(cls, value: Fraction | int) -> TorusValue:
        value = Fraction(value) % 1
        return cls(numerator=value.numerator, denominator=value.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def order(self) -> int:
        return self.denominator

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other: TorusValue) -> TorusValue:
        return TorusValue.of(self.fraction + other.fraction)

    def __neg__(self) -> TorusValue:
        return TorusValue.of(-self.fraction)

    def __str__(self) -> str:
        return "0" if self.is_zero() else f"{self.numerator}/{self.denominator}"


class Element(BaseModel):
    """ Coordinates of a group element in invariant-factor form. """
    model_config = ConfigDict(frozen=True)

    coords: Coords = ()

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


class FiniteAbelianGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    invariant_factors: tuple[int, ...] = ()
    # set on the character group; dual_group flips it, so the double dual is the group itself
    dual: bool = False

    @field_validator("invariant_factors")
    @classmethod
    def _check_chain(cls, factors: tuple[int, ...]) -> tuple[int, ...]:
        for d in factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} is smaller than 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"invariant factor {a} does not divide {b}")
        return factors

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def check(self, x: Element) -> Element:
        if len(x.coords) != self.rank:
            raise GroupMismatchError(f"element {x} has {len(x.coords)} coordinates, {self} needs {self.rank}")
        for c, d in zip(x.coords, self.invariant_factors):
            if not 0 <= c < d:
                raise MalformedElementError(f"coordinate {c} of {x} is outside [0, {d}) in {self}")
        return x

    def element(self, coords: Sequence[int]) -> Element:
        return self.check(Element(coords=tuple(coords)))

    def reduce(self, coords: Sequence[int]) -> Element:
        return Element(coords=tuple(c % d for c, d in zip(coords, self.invariant_factors)))

    def zero(self) -> Element:
        return Element(coords=(0,) * self.rank)

    def add(self, x: Element, y: Element) -> Element:
        return Element(coords=_add(self.invariant_factors, x.coords, y.coords))

    def multiple(self, n: int, x: Element) -> Element:
        return self.reduce([n * c for c in x.coords])

    def elements(self) -> Iterator[Element]:
        for coords in product(*(range(d) for d in self.invariant_factors)):
            yield Element.model_construct(coords=coords)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "Z(1)"
        return "x".join(f"Z({d})" for d in self.invariant_factors)


def _add(factors: tuple[int, ...], a: Coords, b: Coords) -> Coords:
    return tuple((x + y) % d for x, y, d in zip(a, b, factors))


def _cyclic_coords(factors: tuple[int, ...], g: Coords) -> list[Coords]:
    zero = (0,) * len(factors)
    multiples = [zero]
    x = g
    while x != zero:
        multiples.append(x)
        x = _add(factors, x, g)
    return multiples


def group_from_cyclic_orders(orders: Iterable[int], dual: bool = False) -> FiniteAbelianGroup:
    """ Regroup Z(n_1) x ... x Z(n_r) into invariant-factor form. """
    powers: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ValueError(f"Z({n}) is not a finite cyclic group")
        for p, e in factorint(n).items():
            powers.setdefault(int(p), []).append(int(p) ** int(e))
    width = max((len(v) for v in powers.values()), default=0)
    factors = [1] * width
    for prime_powers in powers.values():
        for i, q in enumerate(sorted(prime_powers, reverse=True)):
            factors[i] *= q
    return FiniteAbelianGroup(invariant_factors=tuple(reversed(factors)), dual=dual)


class Subgroup(BaseModel):
    """A subgroup in canonical form.

    canonical_generators holds the columns of the Hermite normal form of the preimage lattice;
    cached_order is |G| divided by the lattice index.
    """
    model_config = ConfigDict(frozen=True)

    parent: FiniteAbelianGroup
    canonical_generators: tuple[Coords, ...] = ()
    cached_order: int = 1

    @classmethod
    def span(cls, parent: FiniteAbelianGroup, generators: Iterable[Element]) -> Subgroup:
        return _from_columns(parent, _normalize_columns(parent, (parent.check(g).coords for g in generators)))

    @classmethod
    def whole(cls, parent: FiniteAbelianGroup) -> Subgroup:
        return _whole(parent)

    @classmethod
    def trivial(cls, parent: FiniteAbelianGroup) -> Subgroup:
        return _from_columns(parent, ())

    @property
    def order(self) -> int:
        return self.cached_order

    @property
    def index(self) -> int:
        return self.parent.order // self.cached_order

    @property
    def is_dual(self) -> bool:
        return self.parent.dual

    def is_trivial(self) -> bool:
        return self.cached_order == 1

    def is_whole(self) -> bool:
        return self.cached_order == self.parent.order

    def generators(self) -> list[Element]:
        """ Reduced, non-zero canonical generators in lexicographic order. """
        reduced = set(_normalize_columns(self.parent, self.canonical_generators))
        return [Element(coords=c) for c in sorted(reduced)]

    def __contains__(self, x: Element) -> bool:
        return _lattice_contains(self.canonical_generators, x.coords)

    def issubset(self, other: Subgroup) -> bool:
        return all(_lattice_contains(other.canonical_generators, g.coords) for g in self.generators())

    def __str__(self) -> str:
        return "gens=" + ",".join(str(g) for g in self.generators())


def _normalize_columns(parent: FiniteAbelianGroup, columns: Iterable[Sequence[int]]) -> tuple[Coords, ...]:
    zero = (0,) * parent.rank
    reduced = {tuple(c % d for c, d in zip(col, parent.invariant_factors)) for col in columns}
    reduced.discard(zero)
    return tuple(sorted(reduced))


@lru_cache(maxsize=65536)
def _from_columns(parent: FiniteAbelianGroup, columns: tuple[Coords, ...]) -> Subgroup:
    k = parent.rank
    if k == 0:
        return Subgroup(parent=parent)
    lattice = list(columns) + [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(parent.invariant_factors)]
    hnf = hermite_normal_form(Matrix(k, len(lattice), lambda i, j: lattice[j][i]))
    if hnf.shape != (k, k):
        raise InconsistencyError(f"Hermite form of a full-rank lattice has shape {hnf.shape}, expected {(k, k)}")
    basis = tuple(tuple(int(hnf[i, j]) for i in range(k)) for j in range(k))
    index = prod(basis[j][j] for j in range(k))
    return Subgroup(parent=parent, canonical_generators=basis, cached_order=parent.order // index)


def _whole(parent: FiniteAbelianGroup) -> Subgroup:
    return _from_columns(parent, tuple(tuple(1 if i == j else 0 for i in range(parent.rank)) for j in range(parent.rank)))


def _lattice_contains(basis: tuple[Coords, ...], coords: Sequence[int]) -> bool:
    # back-substitution against the upper triangular basis
    v = list(coords)
    for j in reversed(range(len(basis))):
        column = basis[j]
        q, r = divmod(v[j], column[j])
        if r:
            return False
        if q:
            for i in range(j + 1):
                v[i] -= q * column[i]
    return True


@lru_cache(maxsize=65536)
def subgroup_coords(H: Subgroup) -> tuple[Coords, ...]:
    """ Every element of H as a coordinate tuple, sorted lexicographically. """
    if H.cached_order > params.ELEMENT_CACHE_LIMIT:
        raise CapacityError(H.cached_order, params.ELEMENT_CACHE_LIMIT, what="element listing")
    factors = H.parent.invariant_factors
    points = {(0,) * H.parent.rank}
    for g in H.generators():
        multiples = _cyclic_coords(factors, g.coords)
        points = {_add(factors, p, m) for p in points for m in multiples}
    if len(points) != H.cached_order:
        raise InconsistencyError(f"span of {H} has {len(points)} elements, Hermite form says {H.cached_order}")
    return tuple(sorted(points))


def elements(H: Subgroup) -> list[Element]:
    return [Element.model_construct(coords=c) for c in subgroup_coords(H)]


def subgroup_sort_key(H: Subgroup) -> tuple[int, tuple[Coords, ...]]:
    return (H.cached_order, subgroup_coords(H))


def _independent_generators(factors: tuple[int, ...], points: Iterable[Coords]) -> tuple[Coords, ...]:
    spanned = {(0,) * len(factors)}
    gens = []
    for c in sorted(points):
        if c in spanned:
            continue
        gens.append(c)
        multiples = _cyclic_coords(factors, c)
        spanned = {_add(factors, p, m) for p in spanned for m in multiples}
    return tuple(gens)


def _same_parent(H1: Subgroup, H2: Subgroup) -> None:
    if H1.parent != H2.parent:
        raise GroupMismatchError(f"subgroups of different groups: {H1.parent} and {H2.parent}")


def canonicalize_subgroup(parent: FiniteAbelianGroup, generators: Iterable[Element]) -> Subgroup:
    return Subgroup.span(parent, generators)


def membership(H: Subgroup, x: Element) -> bool:
    H.parent.check(x)
    return x in H


def subgroup_sum(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _same_parent(H1, H2)
    return _from_columns(H1.parent, _normalize_columns(H1.parent, H1.canonical_generators + H2.canonical_generators))


def subgroup_intersection(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _same_parent(H1, H2)
    small, large = sorted((H1, H2), key=lambda H: H.cached_order)
    common = [c for c in subgroup_coords(small) if _lattice_contains(large.canonical_generators, c)]
    return _from_columns(H1.parent, _independent_generators(H1.parent.invariant_factors, common))


class Quotient(BaseModel):
    """ G/H in invariant-factor form together with the projection G -> G/H. """
    model_config = ConfigDict(frozen=True)

    group: FiniteAbelianGroup
    kernel: Subgroup
    # one integer row per invariant factor of the quotient: x -> (row . x) mod factor
    transform: tuple[Coords, ...] = ()

    def project(self, x: Element) -> Element:
        self.kernel.parent.check(x)
        return Element(coords=tuple(
            sum(r * c for r, c in zip(row, x.coords)) % f
            for row, f in zip(self.transform, self.group.invariant_factors)
        ))


@lru_cache(maxsize=65536)
def _quotient(H: Subgroup) -> Quotient:
    G = H.parent
    k = G.rank
    if k == 0:
        return Quotient(group=FiniteAbelianGroup(dual=G.dual), kernel=H)
    basis = Matrix(k, k, lambda i, j: H.canonical_generators[j][i])
    smith, left, _ = smith_normal_decomp(basis, domain=ZZ)
    pairs = []
    for i in range(k):
        f = abs(int(smith[i, i]))
        if f > 1:
            pairs.append((f, tuple(int(v) for v in left.row(i))))
    pairs.sort(key=lambda pair: pair[0])
    factors = tuple(f for f, _ in pairs)
    if prod(factors) != H.index:
        raise InconsistencyError(f"Smith form of {H} gives |G/H| = {prod(factors)}, expected {H.index}")
    return Quotient(group=FiniteAbelianGroup(invariant_factors=factors, dual=G.dual), kernel=H,
                    transform=tuple(row for _, row in pairs))


def quotient_group(G: FiniteAbelianGroup, H: Subgroup) -> Quotient:
    if H.parent != G:
        raise GroupMismatchError(f"{H} is not a subgroup of {G}")
    return _quotient(H)


def subgroup_structure(H: Subgroup) -> FiniteAbelianGroup:
    """ Invariant factors of H as an abstract group: Z^k modulo the relations W^-1 diag(d). """
    G = H.parent
    if G.rank == 0 or H.is_trivial():
        return FiniteAbelianGroup(dual=G.dual)
    k = G.rank
    basis = Matrix(k, k, lambda i, j: H.canonical_generators[j][i])
    relations = basis.inv() * diag(*G.invariant_factors)
    relations = Matrix(k, k, lambda i, j: int(relations[i, j]))
    factors = [abs(int(f)) for f in invariant_factors(relations)]
    return group_from_cyclic_orders((f for f in factors if f > 1), dual=G.dual)


def _elementary_divisors(G: FiniteAbelianGroup) -> dict[int, list[int]]:
    exponents: dict[int, list[int]] = {}
    for d in G.invariant_factors:
        for p, e in factorint(d).items():
            exponents.setdefault(int(p), []).append(int(e))
    return {p: sorted(es, reverse=True) for p, es in exponents.items()}


def embeds_in(A: FiniteAbelianGroup, B: FiniteAbelianGroup) -> bool:
    """ True iff A is isomorphic to a subgroup of B. """
    inner, outer = _elementary_divisors(A), _elementary_divisors(B)
    for p, exps in inner.items():
        others = outer.get(p, [])
        if len(exps) > len(others) or any(a > b for a, b in zip(exps, others)):
            return False
    return True


def enumerate_subgroups(G: FiniteAbelianGroup, bound: int | None = None) -> list[Subgroup]:
    """ Every subgroup of G, ordered by (order, sorted element list). """
    bound = params.MAX_ORDER if bound is None else bound
    if G.order > bound:
        raise CapacityError(G.order, bound)
    return list(_all_subgroups(G))


@lru_cache(maxsize=256)
def _all_subgroups(G: FiniteAbelianGroup) -> tuple[Subgroup, ...]:
    factors = G.invariant_factors
    trivial = frozenset({(0,) * G.rank})
    cyclic: dict[frozenset, Coords] = {}
    for x in product(*(range(d) for d in factors)):
        cyclic.setdefault(frozenset(_cyclic_coords(factors, x)), x)

    # every subgroup is a finite sum of cyclic ones
    found: dict[frozenset, tuple[Coords, ...]] = {trivial: ()}
    for points, g in cyclic.items():
        found.setdefault(points, (g,))
    frontier = list(found)
    while frontier:
        fresh = []
        for points in frontier:
            for cyclic_points, g in cyclic.items():
                if cyclic_points <= points:
                    continue
                total = frozenset(_add(factors, a, b) for a in points for b in cyclic_points)
                if total not in found:
                    found[total] = found[points] + (g,)
                    fresh.append(total)
        frontier = fresh

    subgroups = [_from_columns(G, _normalize_columns(G, gens)) for gens in found.values()]
    return tuple(sorted(subgroups, key=subgroup_sort_key))


class GroupInvariants(BaseModel):
    order: int
    exponent: int
    p_ranks: dict[int, int]


def group_invariants(G: FiniteAbelianGroup) -> GroupInvariants:
    p_ranks = {int(p): sum(1 for d in G.invariant_factors if d % p == 0) for p in primefactors(G.exponent)}
    return GroupInvariants(order=G.order, exponent=G.exponent, p_ranks=p_ranks)


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """ One group per isomorphism class of order n. """
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        shapes = (dict(parts) for parts in partitions(int(e)))
        per_prime.append([[int(p) ** part for part, mult in shape.items() for _ in range(mult)] for shape in shapes])
    groups = {group_from_cyclic_orders([q for block in choice for q in block]) for choice in product(*per_prime)}
    return sorted(groups, key=lambda G: G.invariant_factors)


def abelian_groups_of_order_at_most(n: int) -> list[FiniteAbelianGroup]:
    return [G for m in range(1, n + 1) for G in abelian_groups_of_order(m)]


## Textual grammar: Z(4)xZ(2), [1,0], gens=[1,0],[0,2]

_FACTOR = re.compile(r"Z\((\d+)\)")
_ELEMENT = re.compile(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]")


def parse_group(text: str) -> FiniteAbelianGroup:
    s = text.strip()
    pos = 0
    orders = []
    while True:
        match = _FACTOR.match(s, pos)
        if not match:
            raise SpecParseError("expected a factor Z(n)", s, pos)
        n = int(match.group(1))
        if n < 1:
            raise SpecParseError("cyclic order must be positive", s, match.start(1))
        orders.append(n)
        pos = match.end()
        if pos == len(s):
            break
        if s[pos] != "x":
            raise SpecParseError("expected 'x' between factors", s, pos)
        pos += 1
    return group_from_cyclic_orders(orders)


def _parse_coords(s: str, pos: int) -> tuple[Coords, int]:
    match = _ELEMENT.match(s, pos)
    if not match:
        raise SpecParseError("expected an element [a,b,...]", s, pos)
    body = match.group(1)
    coords = tuple(int(c) for c in body.split(",")) if body else ()
    return coords, match.end()


def parse_element(text: str, G: FiniteAbelianGroup) -> Element:
    s = text.strip()
    coords, end = _parse_coords(s, 0)
    if end != len(s):
        raise SpecParseError("unexpected text after element", s, end)
    return G.element(coords)


def parse_generators(text: str) -> list[Coords]:
    s = text.strip()
    if not s.startswith("gens="):
        raise SpecParseError("expected 'gens='", s, 0)
    pos = len("gens=")
    gens = []
    while pos < len(s):
        coords, pos = _parse_coords(s, pos)
        gens.append(coords)
        if pos < len(s):
            if s[pos] != ",":
                raise SpecParseError("expected ',' between generators", s, pos)
            pos += 1
            if pos == len(s):
                raise SpecParseError("trailing ','", s, pos)
    return gens


def parse_subgroup(text: str, G: FiniteAbelianGroup) -> Subgroup:
    return Subgroup.span(G, (G.element(c) for c in parse_generators(text)))
