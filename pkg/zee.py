"""Precompact topologies on the integers.

A subgroup S of the circle (the dual of Z) is described by its torsion part, a supernatural number whose
divisors are the n with 1/n in S, and a symbolic count of independent free generators. The closed subgroups
of (Z, tau_S) depend only on the torsion part: kZ (k >= 1) is closed exactly when k divides it.
"""
from __future__ import annotations

import re
from functools import cached_property, lru_cache, reduce
from itertools import product
from math import lcm, prod
from typing import Iterable, Iterator, Literal, Mapping

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import divisors, factorint, isprime

from errors import InconsistencyError, PreconditionError, SpecParseError

INFINITY = "inf"
CONTINUUM = "c"

Exponent = int | Literal["inf"]


@lru_cache(maxsize=None)
def _factorization(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((int(p), int(e)) for p, e in sorted(factorint(n).items()))


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in divisors(n))


@lru_cache(maxsize=None)
def _divisor_powers(n: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """ Every divisor t of n with its factorisation, largest t first. """
    factors = _factorization(n)
    found = []
    for powers in product(*(range(e + 1) for _, e in factors)):
        t = prod(p ** v for (p, _), v in zip(factors, powers))
        found.append((t, tuple((p, v) for (p, _), v in zip(factors, powers) if v)))
    return tuple(sorted(found, reverse=True))


def _le(v: int, e: Exponent) -> bool:
    return e == INFINITY or v <= e


def _min(a: Exponent, b: Exponent) -> Exponent:
    if a == INFINITY:
        return b
    if b == INFINITY:
        return a
    return min(a, b)


def _max(a: Exponent, b: Exponent) -> Exponent:
    if INFINITY in (a, b):
        return INFINITY
    return max(a, b)


class SupernaturalNumber(BaseModel):
    """A formal product of prime powers p^e with e in {0, 1, ..., inf}.

    Primes absent from `exponents` carry `default_exponent`; entries never repeat the default.
    """
    model_config = ConfigDict(frozen=True)

    exponents: tuple[tuple[int, Exponent], ...] = ()
    default_exponent: Literal[0, "inf"] = 0

    @field_validator("exponents")
    @classmethod
    def _check_primes(cls, exponents):
        primes = [p for p, _ in exponents]
        if primes != sorted(set(primes)):
            raise ValueError(f"primes {primes} are not strictly increasing")
        for p, e in exponents:
            if not isprime(p):
                raise ValueError(f"{p} is not a prime")
            if e != INFINITY and e < 0:
                raise ValueError(f"negative exponent {e} at {p}")
        return exponents

    @model_validator(mode="after")
    def _check_sparse(self):
        for p, e in self.exponents:
            if e == self.default_exponent:
                raise ValueError(f"entry {p}^{e} repeats the default exponent")
        return self

    @classmethod
    def of(cls, exponents: Mapping[int, Exponent], default: Literal[0, "inf"] = 0) -> SupernaturalNumber:
        entries = tuple(sorted((int(p), e) for p, e in exponents.items() if e != default))
        return cls(exponents=entries, default_exponent=default)

    @classmethod
    def from_int(cls, n: int) -> SupernaturalNumber:
        if n < 1:
            raise PreconditionError(f"{n} is not a positive integer")
        return cls.of(dict(_factorization(n)))

    @classmethod
    def one(cls) -> SupernaturalNumber:
        return cls()

    @classmethod
    def everything(cls) -> SupernaturalNumber:
        return cls(default_exponent=INFINITY)

    @cached_property
    def exponent_map(self) -> dict[int, Exponent]:
        return dict(self.exponents)

    def exponent(self, p: int) -> Exponent:
        return self.exponent_map.get(p, self.default_exponent)

    @property
    def is_finite(self) -> bool:
        return self.default_exponent == 0 and all(e != INFINITY for _, e in self.exponents)

    @property
    def value(self) -> int:
        if not self.is_finite:
            raise PreconditionError(f"{self} is not a finite number")
        return prod(p ** e for p, e in self.exponents)

    def is_trivial(self) -> bool:
        return self.default_exponent == 0 and not self.exponents

    def is_all(self) -> bool:
        return self.default_exponent == INFINITY and not self.exponents

    def divides(self, n: int) -> bool:
        """ n is in the divisor set: v_p(n) <= exponent(p) for every p. """
        if n < 1:
            raise PreconditionError(f"divisibility is only defined for positive integers, got {n}")
        return all(_le(v, self.exponent(p)) for p, v in _factorization(n))

    def _combine(self, other: SupernaturalNumber, pick) -> SupernaturalNumber:
        primes = {p for p, _ in self.exponents} | {p for p, _ in other.exponents}
        default = pick(self.default_exponent, other.default_exponent)
        return SupernaturalNumber.of({p: pick(self.exponent(p), other.exponent(p)) for p in primes}, default)

    def gcd(self, other: SupernaturalNumber) -> SupernaturalNumber:
        return self._combine(other, _min)

    def lcm(self, other: SupernaturalNumber) -> SupernaturalNumber:
        return self._combine(other, _max)

    def divisor_set(self, limit: int) -> list[int]:
        return [n for n in range(1, limit + 1) if self.divides(n)]

    def __str__(self) -> str:
        terms = ["all"] if self.default_exponent == INFINITY else []
        terms += [str(p) if e == 1 else f"{p}^{e}" for p, e in self.exponents]
        return "*".join(terms) or "1"


class TorusSubgroupDesc(BaseModel):
    model_config = ConfigDict(frozen=True)

    torsion: SupernaturalNumber = SupernaturalNumber()
    free_rank: int | Literal["c"] = 0

    @field_validator("free_rank")
    @classmethod
    def _check_rank(cls, free_rank):
        if free_rank != CONTINUUM and free_rank < 0:
            raise ValueError(f"negative free rank {free_rank}")
        return free_rank

    @property
    def is_hausdorff(self) -> bool:
        return not self.torsion.is_finite or self.free_rank != 0

    def with_free_rank(self, free_rank: int | Literal["c"]) -> TorusSubgroupDesc:
        return TorusSubgroupDesc(torsion=self.torsion, free_rank=free_rank)

    def __str__(self) -> str:
        return f"tors={self.torsion},free={self.free_rank}"


class IntSubgroup(BaseModel):
    """ kZ; k = 0 is the trivial subgroup and k = 1 all of Z. """
    model_config = ConfigDict(frozen=True)

    k: int

    @field_validator("k")
    @classmethod
    def _check_k(cls, k):
        if k < 0:
            raise ValueError(f"{k}Z is written with a non-negative k")
        return k

    def contains(self, other: IntSubgroup) -> bool:
        if self.k == 0:
            return other.k == 0
        return other.k % self.k == 0

    def intersection(self, other: IntSubgroup) -> IntSubgroup:
        """ n1Z ∩ n2Z = lcm(n1, n2)Z; 0Z absorbs. """
        if self.k == 0 or other.k == 0:
            return IntSubgroup(k=0)
        return IntSubgroup(k=lcm_pair(self.k, other.k))

    def __str__(self) -> str:
        return f"{self.k}Z"


def lcm_pair(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise PreconditionError(f"lcm of non-positive integers {a}, {b}")
    return lcm(a, b)


def lcm_set(F: Iterable[int]) -> int:
    F = list(F)
    if not F:
        raise PreconditionError("lcm of an empty set")
    if any(n < 1 for n in F):
        raise PreconditionError(f"lcm of non-positive integers {F}")
    return reduce(lcm_pair, F)


def lcm_closure(C: Iterable[int]) -> SupernaturalNumber:
    """ The supernatural number whose divisors are exactly the divisors of lcms of finite subsets of C. """
    exponents: dict[int, int] = {}
    for c in C:
        if c < 1:
            raise PreconditionError(f"{c} cannot be in a set closed under lcms of positive integers")
        for p, e in _factorization(c):
            exponents[p] = max(exponents.get(p, 0), e)
    return SupernaturalNumber.of(exponents)


def torus_subgroup_from_c(C: Iterable[int], free_rank: int | Literal["c"] = 0) -> TorusSubgroupDesc:
    """ S_C = <1/n : n in C>; its closed-subgroup index set is the lcm-closure of C. """
    return TorusSubgroupDesc(torsion=lcm_closure(C), free_rank=free_rank)


def c_set_contains(S: TorusSubgroupDesc, n: int) -> bool:
    if n < 1:
        raise PreconditionError("n = 0 is not a member of any C_S; ask is_closed_int about 0Z instead")
    return S.torsion.divides(n)


def closure_int(S: TorusSubgroupDesc, H: IntSubgroup) -> IntSubgroup:
    if H.k == 0:
        # closure of {0} is the annihilator of S in Z
        if S.torsion.is_finite and S.free_rank == 0:
            return IntSubgroup(k=S.torsion.value)
        return IntSubgroup(k=0)
    t = 1
    for p, v in _factorization(H.k):
        e = S.torsion.exponent(p)
        t *= p ** (v if e == INFINITY else min(v, e))
    return IntSubgroup(k=t)


def is_closed_int(S: TorusSubgroupDesc, H: IntSubgroup) -> bool:
    closed = closure_int(S, H) == H
    if H.k >= 1:
        # kZ is closed iff 1/k lies in S
        by_membership = c_set_contains(S, H.k)
        if closed != by_membership:
            raise InconsistencyError(f"{H} under {S}: closure says closed={closed}, 1/k in S is {by_membership}")
    return closed


def is_dense_int(S: TorusSubgroupDesc, H: IntSubgroup) -> bool:
    dense = closure_int(S, H).k == 1
    if H.k >= 2:
        # k is not in C_S and no s > 1 in C_S divides k
        by_divisors = not any(c_set_contains(S, s) for s in _divisors(H.k) if s > 1)
        if dense != by_divisors:
            raise InconsistencyError(f"{H} under {S}: closure says dense={dense}, divisor criterion {by_divisors}")
    return dense


def closure_by_divisor_scan(S: TorusSubgroupDesc, k: int) -> IntSubgroup:
    """ max{t : t | k, t in C_S}, by scanning the divisors of k >= 1 from the largest down. """
    if k < 1:
        raise PreconditionError(f"the divisor scan needs k >= 1, got {k}")
    torsion = S.torsion
    return IntSubgroup(k=next(t for t, powers in _divisor_powers(k)
                              if all(_le(v, torsion.exponent(p)) for p, v in powers)))


def m_s(S: TorusSubgroupDesc) -> TorusSubgroupDesc:
    """ The smallest dual subgroup with the closed subgroups of S: its torsion part. """
    return S.with_free_rank(0)


def M_s(S: TorusSubgroupDesc) -> TorusSubgroupDesc:
    """ A maximal dense subgroup with the same closed subgroups: torsion plus a continuum-sized free part. """
    return S.with_free_rank(CONTINUUM)


class IntClassification(BaseModel):
    hausdorff: bool
    sc: bool
    topologically_simple: bool
    has_nontrivial_closed: bool
    family_descriptor: str


def classify_int(S: TorusSubgroupDesc) -> IntClassification:
    return IntClassification(
        hausdorff=S.is_hausdorff,
        sc=S.torsion.is_all(),
        topologically_simple=S.torsion.is_trivial(),
        has_nontrivial_closed=not S.torsion.is_trivial(),
        family_descriptor=str(S.torsion),
    )


def closed_family_int(S: TorusSubgroupDesc, limit: int) -> list[IntSubgroup]:
    """ The closed subgroups kZ with k <= limit, 0Z first when it is closed. """
    family = [IntSubgroup(k=0)] if is_closed_int(S, IntSubgroup(k=0)) else []
    return family + [IntSubgroup(k=k) for k in range(1, limit + 1) if c_set_contains(S, k)]


def same_closed_family_int(S1: TorusSubgroupDesc, S2: TorusSubgroupDesc) -> bool:
    """ Same closed subgroups kZ, k >= 1; decided by the torsion parts alone. """
    return S1.torsion == S2.torsion


def prime_power_closed(S: TorusSubgroupDesc, p: int) -> bool:
    """ Every p^k Z is closed iff the Pruefer p-group lies in S. """
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    return S.torsion.exponent(p) == INFINITY


def is_maximal_dichotomy(S: TorusSubgroupDesc, p: int) -> bool:
    """ pZ is dense or closed, never both. """
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    H = IntSubgroup(k=p)
    return is_dense_int(S, H) != is_closed_int(S, H)


def supernatural_grid(primes: Iterable[int], exponents: Iterable[Exponent],
                      defaults: Iterable[Literal[0, "inf"]] = (0, INFINITY)) -> Iterator[SupernaturalNumber]:
    primes, exponents = list(primes), list(exponents)
    seen = set()
    for default in defaults:
        for assignment in product(exponents, repeat=len(primes)):
            s = SupernaturalNumber.of(dict(zip(primes, assignment)), default)
            if s not in seen:
                seen.add(s)
                yield s


## Textual grammar: 2^3*5^inf, all, 1; tors=<supernatural>,free=<n|c>; <k>Z

_TERM = re.compile(r"(\d+)(?:\^(\d+|inf))?")


def parse_supernatural(text: str, offset: int = 0, source: str | None = None) -> SupernaturalNumber:
    s = text.strip()
    source = s if source is None else source
    if s == "1":
        return SupernaturalNumber.one()
    default = 0
    exponents: dict[int, Exponent] = {}
    pos = 0
    while True:
        if s.startswith("all", pos):
            if default == INFINITY:
                raise SpecParseError("'all' given twice", source, offset + pos)
            default = INFINITY
            pos += len("all")
        else:
            match = _TERM.match(s, pos)
            if not match:
                raise SpecParseError("expected p, p^e, p^inf or all", source, offset + pos)
            p = int(match.group(1))
            if not isprime(p):
                raise SpecParseError(f"{p} is not a prime", source, offset + pos)
            if p in exponents:
                raise SpecParseError(f"prime {p} given twice", source, offset + pos)
            e = match.group(2)
            exponents[p] = 1 if e is None else (INFINITY if e == INFINITY else int(e))
            pos = match.end()
        if pos == len(s):
            break
        if s[pos] != "*":
            raise SpecParseError("expected '*' between factors", source, offset + pos)
        pos += 1
    return SupernaturalNumber.of(exponents, default)


def parse_descriptor(text: str) -> TorusSubgroupDesc:
    s = text.strip()
    if not s.startswith("tors="):
        raise SpecParseError("expected 'tors='", s, 0)
    split = s.find(",free=")
    if split < 0:
        raise SpecParseError("expected ',free='", s, len(s))
    torsion = parse_supernatural(s[len("tors="):split], offset=len("tors="), source=s)
    rank_text = s[split + len(",free="):]
    if rank_text == CONTINUUM:
        free_rank: int | Literal["c"] = CONTINUUM
    elif rank_text.isdigit():
        free_rank = int(rank_text)
    else:
        raise SpecParseError("free rank must be a non-negative integer or c", s, split + len(",free="))
    return TorusSubgroupDesc(torsion=torsion, free_rank=free_rank)


def parse_int_subgroup(text: str) -> IntSubgroup:
    s = text.strip()
    match = re.fullmatch(r"(\d+)Z", s)
    if not match:
        raise SpecParseError("expected <k>Z", s, 0)
    return IntSubgroup(k=int(match.group(1)))
