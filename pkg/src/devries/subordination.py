"""Boolean algebras carrying a subordination relation.

The relation is stored extensionally: ``rows[a]`` is the bitmask of all
``b`` with ``a `` related to ``b``.  Axioms checked here, writing ``<<``
for the relation:

  A1  1 << 1
  A2  a << b implies a <= b
  A3  a <= b << c <= d implies a << d
  A4  a << b and a << c imply a << b /\\ c
  A5  a << b implies -b << -a
  A6  a << c implies a << b << c for some b
  A7  a != 0 implies b << a for some b != 0

A1-A4 plus join stability without A2/A5 is the bare subordination
class; A1-A5 is a contact algebra; A1-A7 a compingent algebra; finite
compingent algebras are complete, hence de Vries algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal

from .boolean import FiniteBooleanAlgebra
from .errors import InputError

AXIOM_NAMES = ("A1", "A2", "A3", "A4", "A5", "A6", "A7")

CLASS_NONE = "none"
CLASS_SUBORDINATION = "subordination"
CLASS_CONTACT = "contact"
CLASS_COMPINGENT = "compingent"
CLASS_DEVRIES = "deVries"
CLASS_ZERO_DIM = "zero-dimensional deVries"

_CLASS_RANK = {
    CLASS_NONE: 0,
    CLASS_SUBORDINATION: 1,
    CLASS_CONTACT: 2,
    CLASS_COMPINGENT: 3,
    CLASS_DEVRIES: 4,
    CLASS_ZERO_DIM: 5,
}

Classification = Literal[
    "none", "subordination", "contact", "compingent", "deVries",
    "zero-dimensional deVries",
]


@lru_cache(maxsize=None)
def _up_masks(n: int) -> tuple[int, ...]:
    """up_masks[a] = bitmask of all elements above a in the n-atom algebra."""
    size = 1 << n
    out = []
    for a in range(size):
        m = 0
        for b in range(size):
            if a & ~b == 0:
                m |= 1 << b
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def leq_rows(n: int) -> tuple[int, ...]:
    """The table of <= itself, in row-bitmask form."""
    return _up_masks(n)


@dataclass(frozen=True)
class SubordinationAlgebra:
    """A finite Boolean algebra together with an explicit relation table."""

    base: FiniteBooleanAlgebra
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        size = self.base.size
        if len(self.rows) != size:
            raise InputError(f"relation table has {len(self.rows)} rows, expected {size}")
        full = (1 << size) - 1
        for r in self.rows:
            if not 0 <= r <= full:
                raise InputError("relation row out of range")

    @classmethod
    def with_leq(cls, base: FiniteBooleanAlgebra) -> "SubordinationAlgebra":
        return cls(base, leq_rows(base.atom_count))

    @classmethod
    def from_pairs(
        cls, base: FiniteBooleanAlgebra, pairs: Iterable[tuple[int, int]]
    ) -> "SubordinationAlgebra":
        rows = [0] * base.size
        for a, b in pairs:
            base.check_element(a)
            base.check_element(b)
            rows[a] |= 1 << b
        return cls(base, tuple(rows))

    def prec(self, a: int, b: int) -> bool:
        self.base.check_element(a)
        self.base.check_element(b)
        return bool(self.rows[a] >> b & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for a in self.base.elements():
            row = self.rows[a]
            for b in self.base.elements():
                if row >> b & 1:
                    yield (a, b)

    def is_leq_relation(self) -> bool:
        return self.rows == leq_rows(self.base.atom_count)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom verdicts; each failure carries its least witness tuple."""

    checks: tuple[AxiomCheck, ...]
    zero_dimensional: AxiomCheck

    def axiom(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_pass(self) -> bool:
        return all(c.ok for c in self.checks)


def _join_table_value(alg: SubordinationAlgebra, elems: Iterable[int]) -> int:
    out = 0
    for e in elems:
        out |= e
    return out


def check_axioms(alg: SubordinationAlgebra) -> AxiomReport:
    """Decide A1-A7 and zero-dimensionality by exhaustive quantification.

    Witnesses are the lexicographically least counterexample tuples in
    the atom-subset encoding.
    """
    base = alg.base
    rows = alg.rows
    size = base.size
    top = base.top
    elems = range(size)

    def a1() -> AxiomCheck:
        if rows[top] >> top & 1:
            return AxiomCheck("A1", True)
        return AxiomCheck("A1", False, (top, top))

    def a2() -> AxiomCheck:
        for a in elems:
            for b in elems:
                if rows[a] >> b & 1 and a & ~b:
                    return AxiomCheck("A2", False, (a, b))
        return AxiomCheck("A2", True)

    def a3() -> AxiomCheck:
        for a in elems:
            for b in elems:
                if a & ~b:
                    continue
                row = rows[b]
                for c in elems:
                    if not row >> c & 1:
                        continue
                    for d in elems:
                        if c & ~d == 0 and not rows[a] >> d & 1:
                            return AxiomCheck("A3", False, (a, b, c, d))
        return AxiomCheck("A3", True)

    def a4() -> AxiomCheck:
        for a in elems:
            row = rows[a]
            for b in elems:
                if not row >> b & 1:
                    continue
                for c in elems:
                    if row >> c & 1 and not row >> (b & c) & 1:
                        return AxiomCheck("A4", False, (a, b, c))
        return AxiomCheck("A4", True)

    def a5() -> AxiomCheck:
        for a in elems:
            for b in elems:
                if rows[a] >> b & 1 and not rows[top & ~b] >> (top & ~a) & 1:
                    return AxiomCheck("A5", False, (a, b))
        return AxiomCheck("A5", True)

    def a6() -> AxiomCheck:
        cols = _columns(size, rows)
        for a in elems:
            row = rows[a]
            for c in elems:
                if row >> c & 1 and not row & cols[c]:
                    return AxiomCheck("A6", False, (a, c))
        return AxiomCheck("A6", True)

    def a7() -> AxiomCheck:
        cols = _columns(size, rows)
        nonzero = ((1 << size) - 1) & ~1
        for a in elems:
            if a != 0 and not cols[a] & nonzero:
                return AxiomCheck("A7", False, (a,))
        return AxiomCheck("A7", True)

    def zero_dim() -> AxiomCheck:
        cols = _columns(size, rows)
        diag = 0
        for c in elems:
            if rows[c] >> c & 1:
                diag |= 1 << c
        for a in elems:
            row = rows[a]
            for b in elems:
                if row >> b & 1 and not row & diag & cols[b]:
                    return AxiomCheck("zero-dimensional", False, (a, b))
        return AxiomCheck("zero-dimensional", True)

    checks = (a1(), a2(), a3(), a4(), a5(), a6(), a7())
    return AxiomReport(checks=checks, zero_dimensional=zero_dim())


def _columns(size: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    cols = [0] * size
    for a in range(size):
        row = rows[a]
        while row:
            b = (row & -row).bit_length() - 1
            cols[b] |= 1 << a
            row &= row - 1
    return tuple(cols)


def _join_stable(size: int, rows: tuple[int, ...]) -> bool:
    """a << b and c << d imply a v c << b v d, over all quadruples."""
    for a in range(size):
        ra = rows[a]
        if not ra:
            continue
        for c in range(size):
            rc = rows[c]
            if not rc:
                continue
            for b in range(size):
                if not ra >> b & 1:
                    continue
                for d in range(size):
                    if rc >> d & 1 and not rows[a | c] >> (b | d) & 1:
                        return False
    return True


def table_passes(n: int, rows: tuple[int, ...], level: str = "compingent") -> bool:
    """Fast early-exit axiom check used by bulk enumerations.

    ``level`` is ``"contact"`` (A1-A5) or ``"compingent"`` (A1-A7).
    """
    size = 1 << n
    top = size - 1
    ups = _up_masks(n)
    if not rows[top] >> top & 1:
        return False
    for a in range(size):
        if rows[a] & ~ups[a]:
            return False
    # A5 via complement transpose
    for a in range(size):
        row = rows[a]
        while row:
            b = (row & -row).bit_length() - 1
            row &= row - 1
            if not rows[top & ~b] >> (top & ~a) & 1:
                return False
    # A3: the up-closure of every row reachable from above a must stay in rows[a]
    row_up = [0] * size
    for b in range(size):
        row = rows[b]
        acc = 0
        while row:
            c = (row & -row).bit_length() - 1
            acc |= ups[c]
            row &= row - 1
        row_up[b] = acc
    for a in range(size):
        need = 0
        m = ups[a]
        while m:
            b = (m & -m).bit_length() - 1
            need |= row_up[b]
            m &= m - 1
        if need & ~rows[a]:
            return False
    # A4: each row closed under meets
    for a in range(size):
        row = rows[a]
        members = []
        m = row
        while m:
            b = (m & -m).bit_length() - 1
            members.append(b)
            m &= m - 1
        for i, b in enumerate(members):
            for c in members[i + 1:]:
                if not row >> (b & c) & 1:
                    return False
    if level == "contact":
        return True
    cols = _columns(size, rows)
    for a in range(size):
        row = rows[a]
        m = row
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            if not row & cols[c]:
                return False
    nonzero = ((1 << size) - 1) & ~1
    for a in range(1, size):
        if not cols[a] & nonzero:
            return False
    return True


def classify(alg: SubordinationAlgebra) -> Classification:
    """Finest class whose axioms all hold.

    Finite compingent algebras are automatically complete, so they are
    reported as de Vries algebras (zero-dimensional when witnessed).
    """
    report = check_axioms(alg)
    ok = {c.name: c.ok for c in report.checks}
    if report.all_pass:
        if report.zero_dimensional.ok:
            return CLASS_ZERO_DIM
        return CLASS_DEVRIES
    if ok["A1"] and ok["A2"] and ok["A3"] and ok["A4"] and ok["A5"]:
        return CLASS_CONTACT
    # Bare subordination: bounds, A3, A4 and join stability, but not
    # necessarily containment (A2) or symmetry (A5).
    size = alg.base.size
    if (
        ok["A1"]
        and alg.rows[0] & 1
        and ok["A3"]
        and ok["A4"]
        and _join_stable(size, alg.rows)
    ):
        return CLASS_SUBORDINATION
    return CLASS_NONE


def class_at_least(alg: SubordinationAlgebra, cls: Classification) -> bool:
    return _CLASS_RANK[classify(alg)] >= _CLASS_RANK[cls]


def is_compingent(alg: SubordinationAlgebra) -> bool:
    return table_passes(alg.base.atom_count, alg.rows, "compingent")


def is_contact(alg: SubordinationAlgebra) -> bool:
    return table_passes(alg.base.atom_count, alg.rows, "contact")


@lru_cache(maxsize=None)
def _bit_reverse_table(width: int) -> tuple[int, ...]:
    out = []
    for m in range(1 << width):
        r = 0
        for i in range(width):
            if m >> i & 1:
                r |= 1 << (width - 1 - i)
        out.append(r)
    return tuple(out)


def table_encoding_key(n: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    """Row-major lexicographic sort key for a relation table."""
    rev = _bit_reverse_table(1 << n)
    return tuple(rev[r] for r in rows)


def enumerate_all_tables(n: int) -> Iterator[tuple[int, ...]]:
    """Every relation table on the n-atom algebra, in row-major
    lexicographic order of the table bits.  Only feasible for n <= 2."""
    size = 1 << n
    if size * size > 20:
        raise InputError(f"full table enumeration infeasible for {n} atoms")
    rev = _bit_reverse_table(size)
    counters = [0] * size

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == size:
            yield tuple(rev[c] for c in counters)
            return
        for v in range(1 << size):
            counters[i] = v
            yield from rec(i + 1)

    yield from rec(0)


def enumerate_class_tables(n: int, level: str = "contact") -> list[tuple[int, ...]]:
    """All tables of the requested class, sorted in row-major bit order.

    Every contact table satisfies A2 (so only pairs a <= b can be
    related) and A5 (so bits come in complement-transpose orbits);
    enumerating subsets of those orbits covers the whole class without
    scanning all 2^(size^2) tables.
    """
    if n > 3:
        raise InputError("class table enumeration supported for at most 3 atoms")
    size = 1 << n
    top = size - 1
    positions = [(a, b) for a in range(size) for b in range(size) if a & ~b == 0]
    orbits: list[tuple[tuple[int, int], ...]] = []
    seen = set()
    for a, b in positions:
        if (a, b) in seen:
            continue
        mirror = (top & ~b, top & ~a)
        orbit = ((a, b),) if mirror == (a, b) else ((a, b), mirror)
        seen.update(orbit)
        orbits.append(orbit)
    out = []
    for mask in range(1 << len(orbits)):
        rows = [0] * size
        for i, orbit in enumerate(orbits):
            if mask >> i & 1:
                for a, b in orbit:
                    rows[a] |= 1 << b
        rows_t = tuple(rows)
        if table_passes(n, rows_t, level):
            out.append(rows_t)
    out.sort(key=lambda r: table_encoding_key(n, r))
    return out


def forced_pairs_lower_bound(n: int) -> set[tuple[int, int]]:
    """Pairs that belong to every A1-A7 table on the n-atom algebra.

    Least fixpoint of the consequences: A1 seeds (1,1); A7 with A2 and
    atom minimality forces (t,t) for every atom t; then closure under
    A5 symmetry, A3 widening, A4 meets and the A4+A5-derived join
    stability.  Together with A2 this pins the relation to <=.
    """
    size = 1 << n
    top = size - 1
    forced = {(top, top)}
    for i in range(n):
        forced.add((1 << i, 1 << i))
    changed = True
    while changed:
        changed = False
        current = list(forced)
        for a, b in current:
            mirror = (top & ~b, top & ~a)
            if mirror not in forced:
                forced.add(mirror)
                changed = True
            for a2 in range(size):
                if a2 & ~a:
                    continue
                for b2 in range(size):
                    if b & ~b2:
                        continue
                    if (a2, b2) not in forced:
                        forced.add((a2, b2))
                        changed = True
        current = list(forced)
        for a, b in current:
            for c, d in current:
                if a == c and (a, b & d) not in forced:
                    forced.add((a, b & d))
                    changed = True
                if (a | c, b | d) not in forced:
                    forced.add((a | c, b | d))
                    changed = True
    return forced
