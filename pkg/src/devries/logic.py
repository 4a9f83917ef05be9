"""The strict-implication formula language and its two semantics.

Grammar (ASCII):  phi ::= ident | "0" | "1" | "(" phi ")" | "~" phi
                        | phi "&" phi | phi "|" phi | phi "->" phi
                        | phi "=>" phi
with precedence ~ > & > | > -> > =>, both arrows right-associative.

``=>`` is the strict implication: algebraically it collapses to the
top or bottom element according to the subordination; topologically it
is the whole space or empty according to closure-inside-downset.  The
values of the topological semantics live in the regular opens, so the
derived join and material implication are the regular-open ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .duality import dual_space, hat_masks
from .errors import InputError, PreconditionError, VerificationError
from .spaces import FiniteSpace, is_dv_space
from .subordination import SubordinationAlgebra, enumerate_class_tables, is_compingent
from .boolean import FiniteBooleanAlgebra


class FormulaSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


# -- abstract syntax ------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class StrictImp:
    left: "Formula"
    right: "Formula"


Formula = Var | Const | Not | And | Or | Imp | StrictImp

_PRECEDENCE = {StrictImp: 1, Imp: 2, Or: 3, And: 4, Not: 5}


def render(phi: Formula) -> str:
    """ASCII form that reparses to the same tree."""

    def go(node: Formula, parent_level: int) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            return "1" if node.value else "0"
        if isinstance(node, Not):
            return "~" + go(node.sub, _PRECEDENCE[Not])
        ops = {And: "&", Or: "|", Imp: "->", StrictImp: "=>"}
        level = _PRECEDENCE[type(node)]
        if isinstance(node, (Imp, StrictImp)):
            text = f"{go(node.left, level + 1)} {ops[type(node)]} {go(node.right, level)}"
        else:
            text = f"{go(node.left, level)} {ops[type(node)]} {go(node.right, level + 1)}"
        if level < parent_level:
            return "(" + text + ")"
        return text

    return go(phi, 0)


def formula_variables(phi: Formula) -> tuple[str, ...]:
    out: set[str] = set()

    def walk(node: Formula) -> None:
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Not):
            walk(node.sub)
        elif isinstance(node, (And, Or, Imp, StrictImp)):
            walk(node.left)
            walk(node.right)

    walk(phi)
    return tuple(sorted(out))


# -- lexing and parsing ----------------------------------------------------------


_TOKEN_RE = re.compile(r"[a-z][a-z0-9_]*|->|=>|[01()&|~]|\S")


@dataclass(frozen=True)
class _Token:
    kind: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch in " \t":
                pos += 1
                continue
            m = _TOKEN_RE.match(line, pos)
            if not m:
                raise FormulaSyntaxError(f"unknown token {ch!r}", line_no, pos + 1)
            tok = m.group(0)
            if tok not in ("0", "1", "->", "=>", "(", ")", "&", "|", "~") and not re.fullmatch(
                r"[a-z][a-z0-9_]*", tok
            ):
                raise FormulaSyntaxError(f"unknown token {tok!r}", line_no, pos + 1)
            tokens.append(_Token(tok, line_no, pos + 1))
            pos = m.end()
    return tokens


def parse(text: str) -> Formula:
    """Parse an ASCII formula, reporting positions for syntax errors."""
    tokens = _tokenize(text)
    if not tokens:
        raise FormulaSyntaxError("empty formula", 1, 1)
    pos = 0

    def peek() -> str | None:
        return tokens[pos].kind if pos < len(tokens) else None

    def advance() -> _Token:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def error(message: str) -> FormulaSyntaxError:
        if pos < len(tokens):
            t = tokens[pos]
            return FormulaSyntaxError(message, t.line, t.column)
        last = tokens[-1]
        return FormulaSyntaxError(message, last.line, last.column + len(last.kind))

    def parse_strict() -> Formula:
        left = parse_imp()
        if peek() == "=>":
            advance()
            return StrictImp(left, parse_strict())
        return left

    def parse_imp() -> Formula:
        left = parse_or()
        if peek() == "->":
            advance()
            return Imp(left, parse_imp())
        return left

    def parse_or() -> Formula:
        node = parse_and()
        while peek() == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_unary()
        while peek() == "&":
            advance()
            node = And(node, parse_unary())
        return node

    def parse_unary() -> Formula:
        if peek() == "~":
            advance()
            return Not(parse_unary())
        return parse_atom()

    def parse_atom() -> Formula:
        kind = peek()
        if kind is None:
            raise error("unexpected end of formula")
        if kind == "(":
            advance()
            node = parse_strict()
            if peek() != ")":
                raise error("expected ')'")
            advance()
            return node
        if kind == "0":
            advance()
            return Const(False)
        if kind == "1":
            advance()
            return Const(True)
        if re.fullmatch(r"[a-z][a-z0-9_]*", kind):
            advance()
            return Var(kind)
        raise error(f"unexpected token {kind!r}")

    node = parse_strict()
    if pos != len(tokens):
        raise error(f"unexpected token {tokens[pos].kind!r}")
    return node


# -- algebraic semantics -----------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicModel:
    algebra: SubordinationAlgebra
    valuation: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, algebra: SubordinationAlgebra, valuation: dict[str, int]):
        for v in valuation.values():
            algebra.base.check_element(v)
        return cls(algebra, tuple(sorted(valuation.items())))

    def value(self, name: str) -> int:
        for key, v in self.valuation:
            if key == name:
                return v
        raise InputError(f"unbound variable {name!r}")


def strict_value(alg: SubordinationAlgebra, a: int, b: int) -> int:
    return alg.base.top if alg.prec(a, b) else 0


def delta(alg: SubordinationAlgebra, a: int, b: int) -> int:
    """The derived binary operator: complement of a strictly-implies-not-b."""
    return alg.base.complement(strict_value(alg, a, alg.base.complement(b)))


def eval_algebraic(model: AlgebraicModel, phi: Formula) -> int:
    alg = model.algebra
    base = alg.base
    if isinstance(phi, Var):
        return model.value(phi.name)
    if isinstance(phi, Const):
        return base.top if phi.value else 0
    if isinstance(phi, Not):
        return base.complement(eval_algebraic(model, phi.sub))
    if isinstance(phi, And):
        return eval_algebraic(model, phi.left) & eval_algebraic(model, phi.right)
    if isinstance(phi, Or):
        return eval_algebraic(model, phi.left) | eval_algebraic(model, phi.right)
    if isinstance(phi, Imp):
        return base.complement(eval_algebraic(model, phi.left)) | eval_algebraic(
            model, phi.right
        )
    if isinstance(phi, StrictImp):
        return strict_value(
            alg, eval_algebraic(model, phi.left), eval_algebraic(model, phi.right)
        )
    raise InputError(f"not a formula node: {phi!r}")


# -- topological semantics -----------------------------------------------------------


@dataclass(frozen=True)
class TopologicalModel:
    space: FiniteSpace
    valuation: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, space: FiniteSpace, valuation: dict[str, int]):
        ro = set(space.regular_opens)
        for name, v in valuation.items():
            if v not in ro:
                raise InputError(
                    f"valuation of {name!r} is not a regular open set"
                )
        return cls(space, tuple(sorted(valuation.items())))

    def value(self, name: str) -> int:
        for key, v in self.valuation:
            if key == name:
                return v
        raise InputError(f"unbound variable {name!r}")


def eval_topological(model: TopologicalModel, phi: Formula) -> int:
    space = model.space
    ro = set(space.regular_opens)

    def go(node: Formula) -> int:
        if isinstance(node, Var):
            value = model.value(node.name)
        elif isinstance(node, Const):
            value = space.full if node.value else 0
        elif isinstance(node, Not):
            value = space.perp(go(node.sub))
        elif isinstance(node, And):
            value = go(node.left) & go(node.right)
        elif isinstance(node, Or):
            value = space.perp(space.perp(go(node.left) | go(node.right)))
        elif isinstance(node, Imp):
            value = space.perp(space.perp(space.perp(go(node.left)) | go(node.right)))
        elif isinstance(node, StrictImp):
            left, right = go(node.left), go(node.right)
            value = space.full if space.ll(left, right) else 0
        else:
            raise InputError(f"not a formula node: {node!r}")
        if value not in ro:
            raise VerificationError("semantic value left the regular opens")
        return value

    return go(phi)


# -- validity -----------------------------------------------------------------------


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    countervaluation: tuple[tuple[str, int], ...] | None = None


def is_valid_on_space(space: FiniteSpace, phi: Formula) -> ValidityResult:
    """Quantify over all regular-open valuations, in canonical order."""
    if not is_dv_space(space).ok:
        raise PreconditionError("validity is stated over dV-spaces")
    names = formula_variables(phi)
    ro = space.regular_opens
    for values in product(ro, repeat=len(names)):
        valuation = dict(zip(names, values))
        model = TopologicalModel.of(space, valuation)
        if eval_topological(model, phi) != space.full:
            return ValidityResult(False, tuple(sorted(valuation.items())))
    return ValidityResult(True)


def is_valid_on_algebra(alg: SubordinationAlgebra, phi: Formula) -> ValidityResult:
    names = formula_variables(phi)
    for values in product(alg.base.elements(), repeat=len(names)):
        valuation = dict(zip(names, values))
        model = AlgebraicModel.of(alg, valuation)
        if eval_algebraic(model, phi) != alg.base.top:
            return ValidityResult(False, tuple(sorted(valuation.items())))
    return ValidityResult(True)


# -- bounded countermodel search --------------------------------------------------


_ATOM_LETTERS = ("a", "b", "c")


@dataclass(frozen=True)
class SearchResult:
    found: bool
    bound: int
    algebra: SubordinationAlgebra | None = None
    valuation: tuple[tuple[str, int], ...] | None = None
    value: int | None = None


def _search_tables(
    tables: list[tuple[int, ...]],
    base: FiniteBooleanAlgebra,
    phi: Formula,
    names: tuple[str, ...],
) -> tuple[int, tuple[int, ...], tuple[int, ...], int] | None:
    for idx, rows in enumerate(tables):
        alg = SubordinationAlgebra(base, rows)
        for values in product(range(base.size), repeat=len(names)):
            model = AlgebraicModel.of(alg, dict(zip(names, values)))
            value = eval_algebraic(model, phi)
            if value != base.top:
                return idx, rows, values, value
    return None


def _search_chunk(args):
    n, atom_names, tables, formula_text, names = args
    base = FiniteBooleanAlgebra(atom_names)
    hit = _search_tables(tables, base, parse(formula_text), names)
    return hit


def countermodel_search(
    phi: Formula,
    max_atoms: int,
    level: str = "contact",
    jobs: int = 1,
) -> SearchResult:
    """First algebraic model of the requested class refuting the formula.

    Enumeration order is atom count ascending, relation tables by their
    row-major bit encoding, valuations lexicographic, so the result is
    canonical.  Workers, when enabled, race over table chunks and the
    least-indexed hit wins.
    """
    if level not in ("contact", "compingent"):
        raise InputError(f"unknown class {level!r}")
    if not 0 <= max_atoms <= 3:
        raise InputError("countermodel bound must be between 0 and 3 atoms")
    names = formula_variables(phi)
    for n in range(max_atoms + 1):
        atom_names = _ATOM_LETTERS[:n]
        base = FiniteBooleanAlgebra(atom_names)
        tables = enumerate_class_tables(n, level)
        if jobs > 1 and len(tables) > 1:
            hit = _parallel_search(n, atom_names, tables, phi, names, jobs)
        else:
            hit = _search_tables(tables, base, phi, names)
        if hit is not None:
            _, rows, values, value = hit
            alg = SubordinationAlgebra(base, rows)
            return SearchResult(
                found=True,
                bound=max_atoms,
                algebra=alg,
                valuation=tuple(zip(names, values)),
                value=value,
            )
    return SearchResult(found=False, bound=max_atoms)


def _parallel_search(n, atom_names, tables, phi, names, jobs):
    from concurrent.futures import ProcessPoolExecutor

    chunk_size = max(1, (len(tables) + jobs - 1) // jobs)
    chunks = [
        (start, tables[start:start + chunk_size])
        for start in range(0, len(tables), chunk_size)
    ]
    text = render(phi)
    best = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(
            _search_chunk,
            [(n, atom_names, chunk, text, names) for start, chunk in chunks],
        )
        for (start, _), hit in zip(chunks, results):
            if hit is None:
                continue
            idx, rows, values, value = hit
            key = (start + idx, values)
            if best is None or key < best[0]:
                best = (key, rows, values, value)
    if best is None:
        return None
    _, rows, values, value = best
    return 0, rows, values, value


# -- agreement between the two semantics ---------------------------------------------


@dataclass(frozen=True)
class AgreementResult:
    agree: bool
    valuation: tuple[tuple[str, int], ...] | None = None


def semantics_agreement(alg: SubordinationAlgebra, phi: Formula) -> AgreementResult:
    """Algebraic truth coincides with topological truth on the dual
    space under the canonical transport of valuations."""
    if not is_compingent(alg):
        raise PreconditionError("agreement is stated for compingent algebras")
    space = dual_space(alg)
    hats = hat_masks(alg)
    names = formula_variables(phi)
    for values in product(alg.base.elements(), repeat=len(names)):
        valuation = dict(zip(names, values))
        alg_value = eval_algebraic(AlgebraicModel.of(alg, valuation), phi)
        transported = {name: hats[v] for name, v in valuation.items()}
        top_value = eval_topological(TopologicalModel.of(space, transported), phi)
        if (alg_value == alg.base.top) != (top_value == space.full):
            return AgreementResult(False, tuple(sorted(valuation.items())))
    return AgreementResult(True)


# -- shipped regression formulas -------------------------------------------------------


def load_regression_formulas() -> list[tuple[str, str]]:
    """(status, formula) pairs from the packaged regression list; the
    status is ``valid`` (no contact countermodel within the bound) or
    ``refutable`` (a contact countermodel exists at two atoms)."""
    from importlib.resources import files

    out = []
    text = files("devries.data").joinpath("regression_formulas.txt").read_text()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        status, _, formula = line.partition("\t")
        status = status.strip()
        formula = formula.strip()
        if status not in ("valid", "refutable") or not formula:
            raise InputError(f"bad regression line: {raw!r}")
        out.append((status, formula))
    return out
