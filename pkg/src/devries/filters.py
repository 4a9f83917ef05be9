"""Filters, ideals, concordance and roundness.

Every filter on a finite lattice is principal, so a filter is stored as
its generator and the member set is materialized on demand.  The unit
filter {1} is proper and admitted everywhere; the improper filter
containing 0 is excluded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PreconditionError, VerificationError
from .subordination import SubordinationAlgebra, is_compingent


@dataclass(frozen=True)
class Filter:
    """The principal up-set of ``generator``; proper, so generator != 0."""

    algebra: SubordinationAlgebra
    generator: int

    def __post_init__(self) -> None:
        self.algebra.base.check_element(self.generator)
        if self.generator == 0:
            raise InputError("improper filter: generator is 0")

    def members(self) -> frozenset[int]:
        g = self.generator
        return frozenset(b for b in self.algebra.base.elements() if g & ~b == 0)

    def __contains__(self, a: int) -> bool:
        self.algebra.base.check_element(a)
        return self.generator & ~a == 0

    def token(self) -> str:
        return "^" + self.algebra.base.element_token(self.generator)


@dataclass(frozen=True)
class Ideal:
    """The principal down-set of ``generator``; proper iff generator != 1."""

    algebra: SubordinationAlgebra
    generator: int

    def __post_init__(self) -> None:
        self.algebra.base.check_element(self.generator)

    @property
    def proper(self) -> bool:
        return self.generator != self.algebra.base.top

    def members(self) -> frozenset[int]:
        g = self.generator
        return frozenset(b for b in self.algebra.base.elements() if b & ~g == 0)

    def __contains__(self, a: int) -> bool:
        self.algebra.base.check_element(a)
        return a & ~self.generator == 0


def round_part(f: Filter) -> frozenset[int]:
    """Members of F that some member of F sits below in the relation."""
    alg = f.algebra
    members = f.members()
    out = set()
    for a in members:
        for b in members:
            if alg.rows[b] >> a & 1:
                out.add(a)
                break
    return frozenset(out)


def is_concordant(f: Filter) -> bool:
    return round_part(f) == f.members()


def concordant_filters(alg: SubordinationAlgebra) -> list[Filter]:
    """All proper filters equal to their round part, by ascending generator."""
    out = []
    for g in alg.base.elements():
        if g == 0:
            continue
        f = Filter(alg, g)
        if is_concordant(f):
            out.append(f)
    return out


def ends(alg: SubordinationAlgebra) -> list[Filter]:
    """Maximal concordant filters under set inclusion."""
    all_conc = concordant_filters(alg)
    gens = [f.generator for f in all_conc]
    out = []
    for f in all_conc:
        # F = up(g) is contained in up(h) iff h <= g
        if any(h != f.generator and h & ~f.generator == 0 for h in gens):
            continue
        out.append(f)
    return out


def ideal_is_round(i: Ideal) -> bool:
    alg = i.algebra
    members = i.members()
    for a in members:
        if not any(alg.rows[a] >> b & 1 for b in members):
            return False
    return True


def round_ideals(alg: SubordinationAlgebra) -> list[Ideal]:
    """All round principal ideals, improper one included, ascending."""
    out = []
    for g in alg.base.elements():
        i = Ideal(alg, g)
        if ideal_is_round(i):
            out.append(i)
    return out


def dual_filter(i: Ideal) -> Filter:
    """The filter of complements of a proper ideal."""
    if not i.proper:
        raise InputError("improper ideal has no proper dual filter")
    gen = i.algebra.base.complement(i.generator)
    return Filter(i.algebra, gen)


def filter_from_element(alg: SubordinationAlgebra, a: int) -> Filter | frozenset[int]:
    """The set of elements the relation puts above ``a``.

    On a compingent algebra this is a proper concordant filter and is
    returned as one (checked); on other algebras the raw set comes back
    whenever it fails to be a filter.
    """
    alg.base.check_element(a)
    if a == 0:
        raise InputError("filter_from_element requires a nonzero element")
    raw = frozenset(c for c in alg.base.elements() if alg.rows[a] >> c & 1)
    f = _as_filter(alg, raw)
    if f is None:
        if is_compingent(alg):
            raise VerificationError(
                f"relation image of {alg.base.element_token(a)} is not a filter "
                "on a compingent algebra"
            )
        return raw
    if is_compingent(alg) and not is_concordant(f):
        raise VerificationError("relation image filter failed concordance on a compingent algebra")
    return f


def _as_filter(alg: SubordinationAlgebra, s: frozenset[int]) -> Filter | None:
    """Recognize a set of elements as a proper principal filter."""
    if not s or 0 in s:
        return None
    gen = alg.base.meet_all(s)
    f = Filter(alg, gen)
    if f.members() != s:
        return None
    return f


def concordant_meet(f: Filter, g: Filter, verify: bool = False) -> Filter:
    """The filter of pairwise meets of two compatible concordant filters."""
    if f.algebra != g.algebra:
        raise InputError("filters live on different algebras")
    gen = f.generator & g.generator
    if gen == 0:
        raise PreconditionError("incompatible filters: generators meet to 0")
    out = Filter(f.algebra, gen)
    if verify:
        pairwise = frozenset(c & d for c in f.members() for d in g.members())
        if pairwise != out.members():
            raise VerificationError("pairwise-meet set is not the generator-meet filter")
    return out


def reg_extension(f: Filter, a: int) -> Filter:
    """Grow F to a concordant filter no concordant extension of which
    contains ``a``; the grown filter is {c /\\ d : c in F, -a << d}."""
    alg = f.algebra
    alg.base.check_element(a)
    if not is_compingent(alg):
        raise PreconditionError("reg_extension requires a compingent algebra")
    if a in f:
        raise PreconditionError(
            f"element {alg.base.element_token(a)} already belongs to the filter"
        )
    if not is_concordant(f):
        raise PreconditionError("reg_extension requires a concordant filter")
    not_a = alg.base.complement(a)
    dset = [d for d in alg.base.elements() if alg.rows[not_a] >> d & 1]
    gset = frozenset(c & d for c in f.members() for d in dset)
    g = _as_filter(alg, gset)
    if g is None:
        raise VerificationError("extension set is not a proper filter")
    if not is_concordant(g):
        raise VerificationError("extension filter is not concordant")
    if not f.members() <= g.members():
        raise VerificationError("extension does not contain the original filter")
    for h in concordant_filters(alg):
        if g.members() <= h.members() and a in h:
            raise VerificationError("a concordant extension still contains the element")
    return g
