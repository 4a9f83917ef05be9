"""Finite Boolean algebras with atom-subset encoding.

Elements are integers used as bitmasks over the atom index set, so the
order is subset inclusion and all operations are bit arithmetic.  The
order is never stored; it is always recomputed from the masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """Powerset algebra over a finite tuple of named atoms.

    The algebra with zero atoms is allowed; it has a single element in
    which bottom and top coincide.
    """

    atom_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.atom_names)) != len(self.atom_names):
            raise InputError(f"duplicate atom names: {self.atom_names!r}")
        for name in self.atom_names:
            if not name or any(ch in name for ch in " \t{},"):
                raise InputError(f"invalid atom name: {name!r}")

    @property
    def atom_count(self) -> int:
        return len(self.atom_names)

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def bottom(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.atom_count)]

    def check_element(self, e: int) -> int:
        if not isinstance(e, int) or not 0 <= e < self.size:
            raise InputError(f"element {e!r} out of range for {self.atom_count}-atom algebra")
        return e

    def leq(self, a: int, b: int) -> bool:
        self.check_element(a)
        self.check_element(b)
        return a & ~b == 0

    def meet(self, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        return a & b

    def join(self, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        return a | b

    def complement(self, a: int) -> int:
        self.check_element(a)
        return self.top & ~a

    def join_all(self, elems: Iterable[int]) -> int:
        out = 0
        for e in elems:
            out |= self.check_element(e)
        return out

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.top
        for e in elems:
            out &= self.check_element(e)
        return out

    def upset(self, a: int) -> Iterator[int]:
        """All elements above ``a`` in ascending encoding order."""
        self.check_element(a)
        return (b for b in self.elements() if a & ~b == 0)

    def downset(self, a: int) -> Iterator[int]:
        self.check_element(a)
        return (b for b in self.elements() if b & ~a == 0)

    def element_token(self, e: int) -> str:
        """Canonical text form: ``0``, ``1``, or ``{a,b}``."""
        self.check_element(e)
        if e == self.top:
            return "1"
        if e == 0:
            return "0"
        names = [self.atom_names[i] for i in range(self.atom_count) if e >> i & 1]
        return "{" + ",".join(names) + "}"

    def parse_element(self, token: str) -> int:
        token = token.strip()
        if token == "0":
            return 0
        if token == "1":
            return self.top
        if not (token.startswith("{") and token.endswith("}")):
            raise InputError(f"bad element token {token!r}: expected 0, 1 or {{...}}")
        body = token[1:-1].strip()
        if not body:
            return 0
        e = 0
        for name in body.split(","):
            name = name.strip()
            try:
                idx = self.atom_names.index(name)
            except ValueError:
                raise InputError(f"unknown atom {name!r} in {token!r}") from None
            e |= 1 << idx
        return e
