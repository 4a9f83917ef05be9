"""Finite topological spaces as explicit open-set families.

Point sets are encoded as integer bitmasks over the point list.  The
open family is stored extensionally, validated at construction, and
every derived notion (closure, specialization, regular opens, the
separation axioms) is recomputed from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .boolean import FiniteBooleanAlgebra
from .errors import InputError, PreconditionError, VerificationError
from .filters import Filter, concordant_filters, is_concordant, round_part
from .subordination import SubordinationAlgebra
from .verdicts import Check, Report

# Exhaustive cover enumeration / subset sweeps stay below these sizes.
_COVER_ENUM_LIMIT = 12
_SUBSET_ENUM_LIMIT = 16


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class FiniteSpace:
    """An explicit point list together with its family of open sets.

    The family must contain the empty set and the whole space and be
    closed under binary union and intersection; finite spaces need no
    infinitary clause.
    """

    point_names: tuple[str, ...]
    opens: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.point_names)) != len(self.point_names):
            raise InputError(f"duplicate point names: {self.point_names!r}")
        for name in self.point_names:
            if not name and self.point_names != ("",):
                raise InputError("empty point name")
            if any(ch in name for ch in " \t"):
                raise InputError(f"invalid point name: {name!r}")
        full = (1 << len(self.point_names)) - 1
        fam = set(self.opens)
        if len(fam) != len(self.opens) or tuple(sorted(fam)) != self.opens:
            raise InputError("open family must be strictly ascending and duplicate-free")
        if 0 not in fam or full not in fam:
            raise InputError("open family must contain the empty set and the whole space")
        for u in fam:
            if not 0 <= u <= full:
                raise InputError("open set out of range")
            for v in fam:
                if u | v not in fam:
                    raise InputError(
                        f"open family not closed under union: "
                        f"{self.subset_token(u)} | {self.subset_token(v)}"
                    )
                if u & v not in fam:
                    raise InputError(
                        f"open family not closed under intersection: "
                        f"{self.subset_token(u)} & {self.subset_token(v)}"
                    )

    # -- basic structure ------------------------------------------------

    @property
    def point_count(self) -> int:
        return len(self.point_names)

    @property
    def full(self) -> int:
        return (1 << self.point_count) - 1

    def points(self) -> range:
        return range(self.point_count)

    def check_subset(self, u: int) -> int:
        if not isinstance(u, int) or not 0 <= u <= self.full:
            raise InputError(f"subset {u!r} out of range")
        return u

    def point_index(self, name: str) -> int:
        try:
            return self.point_names.index(name)
        except ValueError:
            raise InputError(f"unknown point {name!r}") from None

    def subset_token(self, u: int) -> str:
        self.check_subset(u)
        names = [self.point_names[i] for i in self.points() if u >> i & 1]
        return "{" + ",".join(names) + "}"

    # -- specialization preorder -----------------------------------------

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """up_masks[x] = {y : x <= y}; this is the least open set around x."""
        out = []
        for x in self.points():
            m = self.full
            for u in self.opens:
                if u >> x & 1:
                    m &= u
            out.append(m)
        return tuple(out)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        out = [0] * self.point_count
        for y in self.points():
            for x in self.points():
                if self.up_masks[x] >> y & 1:
                    out[y] |= 1 << x
        return tuple(out)

    def spec_le(self, x: int, y: int) -> bool:
        return bool(self.up_masks[x] >> y & 1)

    def specialization(self) -> tuple[int, ...]:
        """Rows of the specialization preorder: row x holds {y : x <= y}."""
        return self.up_masks

    # -- interior / closure operators --------------------------------------

    def interior(self, u: int) -> int:
        self.check_subset(u)
        out = 0
        for o in self.opens:
            if _subset(o, u):
                out |= o
        return out

    def closure(self, u: int) -> int:
        self.check_subset(u)
        return self.full & ~self.interior(self.full & ~u)

    def perp(self, u: int) -> int:
        """Complement of the closure."""
        return self.full & ~self.closure(u)

    def down(self, u: int) -> int:
        """Downward closure under specialization (up-set topology closure)."""
        self.check_subset(u)
        out = 0
        m = u
        while m:
            x = (m & -m).bit_length() - 1
            out |= self.down_masks[x]
            m &= m - 1
        return out

    def up_interior(self, u: int) -> int:
        """Largest upward-closed subset of u (up-set topology interior)."""
        self.check_subset(u)
        out = 0
        m = u
        while m:
            x = (m & -m).bit_length() - 1
            if _subset(self.up_masks[x], u):
                out |= 1 << x
            m &= m - 1
        return out

    def region_operators(self, u: int) -> dict[str, int]:
        return {
            "closure": self.closure(u),
            "perp": self.perp(u),
            "down": self.down(u),
            "up_interior": self.up_interior(u),
        }

    def ll(self, u: int, v: int) -> bool:
        """closure(u) contained in down(v): the spatial subordination."""
        return _subset(self.closure(u), self.down(v))

    # -- distinguished families ---------------------------------------------

    def is_regular_open(self, u: int) -> bool:
        return self.perp(self.perp(u)) == u

    def is_order_regular_open(self, u: int) -> bool:
        return self.up_interior(self.down(u)) == u

    @cached_property
    def regular_opens(self) -> tuple[int, ...]:
        return tuple(u for u in self.opens if self.is_regular_open(u))

    @cached_property
    def compact_opens(self) -> tuple[int, ...]:
        # Every subfamily of a finite open family is finite, so every
        # open is its own finite subcover target: all opens are compact.
        return self.opens

    @cached_property
    def order_regular_opens(self) -> tuple[int, ...]:
        """All order-regular open subsets; exhaustive over the powerset."""
        if self.point_count > _SUBSET_ENUM_LIMIT:
            raise InputError("order-regular-open sweep infeasible for this size")
        return tuple(u for u in range(self.full + 1) if self.is_order_regular_open(u))

    @cached_property
    def compact_order_regular_opens(self) -> tuple[int, ...]:
        return tuple(u for u in self.compact_opens if self.is_order_regular_open(u))

    def open_algebras(self) -> dict[str, tuple[int, ...]]:
        return {
            "RO": self.regular_opens,
            "ORO": self.order_regular_opens,
            "CO": self.compact_opens,
            "CORO": self.compact_order_regular_opens,
        }

    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~u for u in self.opens))

    def is_basis(self, family: tuple[int, ...]) -> bool:
        """Every open is a union of members of the candidate family."""
        for u in self.opens:
            acc = 0
            for b in family:
                if _subset(b, u):
                    acc |= b
            if acc != u:
                return False
        return True

    # -- compactness ---------------------------------------------------------

    def is_compact(self) -> bool:
        """Every open cover has a finite subcover.

        For small families the covers are enumerated outright and each
        is confirmed to contain a finite covering subfamily (itself);
        beyond the enumeration limit the same argument applies because
        every subfamily of a finite open family is finite.
        """
        opens = self.opens
        if len(opens) > _COVER_ENUM_LIMIT:
            return True
        for mask in range(1 << len(opens)):
            acc = 0
            for i in range(len(opens)):
                if mask >> i & 1:
                    acc |= opens[i]
            if not _subset(self.full, acc):
                continue  # not a cover
            # the cover is a finite family, hence its own finite subcover
        return True

    # -- separation axioms -----------------------------------------------

    @cached_property
    def _largest_disjoint_open(self) -> dict[int, int]:
        """For each open U, the largest open disjoint from U."""
        return {u: self.interior(self.full & ~u) for u in self.opens}

    def separation_report(self) -> Report:
        checks = [
            self._check_t0(),
            self._check_t1(),
            self._check_hausdorff(),
            Check("compact", self.is_compact()),
            self._check_order_regular(),
            self._check_order_normal(),
        ]
        return Report(tuple(checks))

    def _check_t0(self) -> Check:
        for x in self.points():
            for y in range(x + 1, self.point_count):
                if self.up_masks[x] == self.up_masks[y]:
                    return Check(
                        "T0", False,
                        f"points {self.point_names[x]} and {self.point_names[y]} "
                        "share all neighborhoods",
                    )
        return Check("T0", True)

    def _check_t1(self) -> Check:
        for x in self.points():
            if self.up_masks[x] != 1 << x:
                other = self.up_masks[x] & ~(1 << x)
                y = (other & -other).bit_length() - 1
                return Check(
                    "T1", False,
                    f"every neighborhood of {self.point_names[x]} contains "
                    f"{self.point_names[y]}",
                )
        return Check("T1", True)

    def _check_hausdorff(self) -> Check:
        for x in self.points():
            for y in range(x + 1, self.point_count):
                if not any(
                    u >> x & 1 and self._largest_disjoint_open[u] >> y & 1
                    for u in self.opens
                ):
                    return Check(
                        "Hausdorff", False,
                        f"points {self.point_names[x]} and {self.point_names[y]} "
                        "cannot be separated",
                    )
        return Check("Hausdorff", True)

    def _check_order_regular(self) -> Check:
        # The point is separated up to down-closure (x in down(U)),
        # matching the order-normal clause; asking for x in U outright
        # fails on any space with a bottom point.
        for o in self.opens:
            b = self.full & ~o
            core = self.up_interior(b)
            for x in self.points():
                if core >> x & 1:
                    continue
                if not any(
                    self.down(u) >> x & 1
                    and _subset(core, self._largest_disjoint_open[u])
                    for u in self.opens
                ):
                    return Check(
                        "order-regular", False,
                        f"closed set {self.subset_token(b)} and point "
                        f"{self.point_names[x]}",
                    )
        return Check("order-regular", True)

    def _check_order_normal(self) -> Check:
        regular_closed = [self.full & ~r for r in self.regular_opens]
        for o in self.opens:
            a = self.full & ~o
            for b in regular_closed:
                core = self.up_interior(b)
                if a & core:
                    continue
                if not any(
                    _subset(a, self.down(u))
                    and _subset(core, self._largest_disjoint_open[u])
                    for u in self.opens
                ):
                    return Check(
                        "order-normal", False,
                        f"closed set {self.subset_token(a)} and regular closed "
                        f"set {self.subset_token(b)}",
                    )
        return Check("order-normal", True)

    # -- well-rounded opens -----------------------------------------------

    def is_well_rounded(self, u: int) -> bool:
        """Any closed set under down(u) separates from the outside of
        down(u) by disjoint opens.

        Given a candidate V, the largest admissible W is the largest
        open disjoint from V, whose complement is closure(V); so the
        search reduces to an open V with B inside down(V) and
        closure(V) inside down(u).
        """
        if u not in self.opens:
            raise InputError("well-roundedness is asked of open sets")
        du = self.down(u)
        for o in self.opens:
            b = self.full & ~o
            if not _subset(b, du):
                continue
            if not any(
                _subset(b, self.down(v)) and _subset(self.closure(v), du)
                for v in self.opens
            ):
                return False
        return True

    def well_rounded_opens(self) -> tuple[int, ...]:
        return tuple(u for u in self.opens if self.is_well_rounded(u))


# -- construction helpers ---------------------------------------------------


def generate_topology(
    point_names: tuple[str, ...] | list[str], subbasis: list[int] | tuple[int, ...]
) -> FiniteSpace:
    """Close a subbasis under binary union and intersection."""
    names = tuple(point_names)
    full = (1 << len(names)) - 1
    fam = {0, full}
    for u in subbasis:
        if not 0 <= u <= full:
            raise InputError("subbasis member out of range")
        fam.add(u)
    changed = True
    while changed:
        changed = False
        current = sorted(fam)
        for u, v in combinations(current, 2):
            for w in (u | v, u & v):
                if w not in fam:
                    fam.add(w)
                    changed = True
    return FiniteSpace(names, tuple(sorted(fam)))


def discrete_space(point_names: tuple[str, ...] | list[str]) -> FiniteSpace:
    names = tuple(point_names)
    full = (1 << len(names)) - 1
    return FiniteSpace(names, tuple(range(full + 1)))


def is_discrete(space: FiniteSpace) -> bool:
    return len(space.opens) == space.full + 1


def sierpinski_space() -> FiniteSpace:
    return FiniteSpace(("a", "b"), (0, 1, 3))


def product_space(left: FiniteSpace, right: FiniteSpace) -> FiniteSpace:
    """Product topology; the point (x, y) gets index x * |Y| + y."""
    names = tuple(
        f"({nx},{ny})" for nx in left.point_names for ny in right.point_names
    )
    rectangles = []
    ny = right.point_count
    for u in left.opens:
        for v in right.opens:
            mask = 0
            mu = u
            while mu:
                x = (mu & -mu).bit_length() - 1
                mask |= v << (x * ny)
                mu &= mu - 1
            rectangles.append(mask)
    return generate_topology(names, rectangles)


def empty_product_space() -> FiniteSpace:
    """Nullary product: the one-point space."""
    return FiniteSpace(("()",), (0, 1))


def fold_product(spaces: list[FiniteSpace]) -> FiniteSpace:
    if not spaces:
        return empty_product_space()
    out = spaces[0]
    for s in spaces[1:]:
        out = product_space(out, s)
    return out


def verify_point_homeomorphism(
    source: FiniteSpace, target: FiniteSpace, mapping: tuple[int, ...]
) -> Report:
    """Check a point map is a bijection carrying opens onto opens."""
    checks = []
    bij = (
        len(mapping) == source.point_count
        and sorted(mapping) == list(target.points())
    )
    checks.append(Check("bijective", bij))
    if bij:
        def image(u: int) -> int:
            out = 0
            m = u
            while m:
                x = (m & -m).bit_length() - 1
                out |= 1 << mapping[x]
                m &= m - 1
            return out

        images = tuple(sorted(image(u) for u in source.opens))
        checks.append(Check("open-and-continuous", images == target.opens))
    return Report(tuple(checks))


# -- the regular-open algebra of a space -------------------------------------


def ro_algebra(space: FiniteSpace) -> tuple[SubordinationAlgebra, tuple[int, ...]]:
    """The regular opens, re-atomized as a Boolean algebra and equipped
    with the spatial subordination (closure inside down-closure).

    Returns the algebra and the decode table from algebra elements back
    to regular-open point sets.
    """
    ro = space.regular_opens
    nonzero = [u for u in ro if u]
    atoms = [u for u in nonzero if not any(v != u and _subset(v, u) for v in nonzero)]
    atoms.sort()
    k = len(atoms)
    if len(ro) != 1 << k:
        raise VerificationError("regular opens do not form a powerset lattice")
    base = FiniteBooleanAlgebra(tuple(f"r{i}" for i in range(k)))
    encode = {}
    decode = [0] * (1 << k)
    for u in ro:
        e = 0
        for i, at in enumerate(atoms):
            if _subset(at, u):
                e |= 1 << i
        if decode[e] or (e == 0 and u != 0):
            raise VerificationError("atom re-encoding of regular opens is not injective")
        encode[u] = e
        decode[e] = u
    # sanity: the Boolean structure transports
    for u in ro:
        if encode[space.perp(u)] != base.complement(encode[u]):
            raise VerificationError("complement does not transport to the atom encoding")
        for v in ro:
            if encode[u & v] != encode[u] & encode[v]:
                raise VerificationError("meet does not transport to the atom encoding")
    rows = [0] * (1 << k)
    for u in ro:
        for v in ro:
            if space.ll(u, v):
                rows[encode[u]] |= 1 << encode[v]
    return SubordinationAlgebra(base, tuple(rows)), tuple(decode)


def _point_filter_generator(space: FiniteSpace, x: int) -> int:
    """Meet of all regular opens containing x, in point-set form."""
    g = space.full
    for u in space.regular_opens:
        if u >> x & 1:
            g &= u
    return g


def regular_opens_at(space: FiniteSpace, x: int) -> frozenset[int]:
    return frozenset(u for u in space.regular_opens if u >> x & 1)


# -- space recognizers ---------------------------------------------------------


def is_dv_space(space: FiniteSpace) -> Report:
    """Compact T0 order-normal space whose regular opens form a basis of
    order-regular sets and whose points realize exactly the concordant
    filters of the regular-open algebra."""
    sep = space.separation_report()
    checks = [
        Check("T0", sep.check("T0").ok, sep.check("T0").detail),
        Check("compact", sep.check("compact").ok),
        Check("order-normal", sep.check("order-normal").ok, sep.check("order-normal").detail),
    ]
    ro = space.regular_opens
    checks.append(
        Check(
            "RO-basis", space.is_basis(ro),
            "" if space.is_basis(ro) else "some open is not a union of regular opens",
        )
    )
    oro_ok = all(space.is_order_regular_open(u) for u in ro)
    checks.append(
        Check("RO-order-regular", oro_ok,
              "" if oro_ok else "a regular open is not order-regular open")
    )
    if not all(c.ok for c in checks):
        return Report(tuple(checks))

    alg, decode = ro_algebra(space)
    encode = {u: e for e, u in enumerate(decode)}
    point_filters = []
    for x in space.points():
        at_x = regular_opens_at(space, x)
        gen = encode[_point_filter_generator(space, x)]
        if gen == 0 or frozenset(
            decode[m] for m in Filter(alg, gen).members()
        ) != at_x:
            checks.append(
                Check("points-give-filters", False,
                      f"RO({space.point_names[x]}) is not a filter")
            )
            return Report(tuple(checks))
        f = Filter(alg, gen)
        if not is_concordant(f):
            checks.append(
                Check("points-give-filters", False,
                      f"RO({space.point_names[x]}) is not concordant")
            )
            return Report(tuple(checks))
        point_filters.append(f.members())
    checks.append(Check("points-give-filters", True))

    missing = []
    for g in alg.base.elements():
        if g == 0:
            continue
        f = Filter(alg, g)
        core = round_part(f)
        if core not in point_filters:
            missing.append(alg.base.element_token(g))
    checks.append(
        Check(
            "filters-are-points", not missing,
            "" if not missing else
            "round part of filter(s) at " + ", ".join(missing) + " is no point",
        )
    )
    return Report(tuple(checks))


def is_uv_space(space: FiniteSpace) -> Report:
    """Compact T0 space whose compact order-regular opens form a basis
    closed under intersection and complement-of-down, every filter on
    which is realized by a point."""
    sep = space.separation_report()
    checks = [
        Check("T0", sep.check("T0").ok, sep.check("T0").detail),
        Check("compact", sep.check("compact").ok),
    ]
    coro = space.compact_order_regular_opens
    fam = set(coro)
    closed_meet = all(u & v in fam for u in coro for v in coro)
    checks.append(Check("CORO-closed-under-meet", closed_meet))
    closed_negdown = all(space.full & ~space.down(u) in fam for u in coro)
    checks.append(Check("CORO-closed-under-neg-down", closed_negdown))
    checks.append(Check("CORO-basis", space.is_basis(coro)))
    if not all(c.ok for c in checks):
        return Report(tuple(checks))

    at_point = [frozenset(u for u in coro if u >> x & 1) for x in space.points()]
    missing = []
    for g in coro:
        if g == 0:
            continue
        filt = frozenset(u for u in coro if _subset(g, u))
        if filt not in at_point:
            missing.append(space.subset_token(g))
    checks.append(
        Check(
            "filters-are-points", not missing,
            "" if not missing else
            "filter(s) generated by " + ", ".join(missing) + " hit no point",
        )
    )
    return Report(tuple(checks))
