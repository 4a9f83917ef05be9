"""Text formats for algebras, spaces, frames, morphisms, point maps and
valuations, plus fixture-directory path resolution.

All formats are line oriented; blank lines and ``#`` comments are
ignored.  Element tokens are ``0``, ``1`` or ``{a,b}``; point and frame
element names are arbitrary whitespace-free tokens.
"""

from __future__ import annotations

import os
from pathlib import Path

from .boolean import FiniteBooleanAlgebra
from .duality import MorphismTable, PointMap, dual_space
from .errors import InputError
from .frames import FiniteFrame
from .spaces import FiniteSpace, generate_topology
from .subordination import SubordinationAlgebra, leq_rows

FIXTURE_DIR_ENV = "DEVRIES_FIXTURE_DIR"


def resolve_path(path: str | Path, relative_to: Path | None = None) -> Path:
    """Find an input file directly, next to a referencing file, or in
    the fixture directory named by the environment."""
    p = Path(path)
    if p.exists():
        return p
    if relative_to is not None and (relative_to / p).exists():
        return relative_to / p
    env = os.environ.get(FIXTURE_DIR_ENV)
    if env and (Path(env) / p).exists():
        return Path(env) / p
    raise InputError(f"file not found: {path}")


def _meaningful_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _expect_header(lines: list[str], key: str, what: str) -> tuple[str, list[str]]:
    if not lines or not lines[0].startswith(key + ":"):
        raise InputError(f"{what} file must start with a '{key}:' line")
    return lines[0][len(key) + 1:].strip(), lines[1:]


# -- algebras -----------------------------------------------------------------


def parse_algebra(text: str) -> SubordinationAlgebra:
    header, rest = _expect_header(_meaningful_lines(text), "atoms", "algebra")
    base = FiniteBooleanAlgebra(tuple(header.split()))
    specs = []
    for line in rest:
        if not line.startswith("prec:"):
            raise InputError(f"unexpected line in algebra file: {line!r}")
        specs.append(line[5:].strip())
    if "leq" in specs:
        if len(specs) != 1:
            raise InputError("'prec: leq' cannot be mixed with explicit pairs")
        return SubordinationAlgebra.with_leq(base)
    pairs = []
    for spec in specs:
        parts = spec.split()
        if len(parts) != 2:
            raise InputError(f"bad relation line: 'prec: {spec}'")
        pairs.append((base.parse_element(parts[0]), base.parse_element(parts[1])))
    return SubordinationAlgebra.from_pairs(base, pairs)


def dump_algebra(alg: SubordinationAlgebra) -> str:
    lines = ["atoms: " + " ".join(alg.base.atom_names)]
    if alg.rows == leq_rows(alg.base.atom_count):
        lines.append("prec: leq")
    else:
        for a, b in alg.pairs():
            lines.append(
                f"prec: {alg.base.element_token(a)} {alg.base.element_token(b)}"
            )
    return "\n".join(lines) + "\n"


def load_algebra(path: str | Path, relative_to: Path | None = None) -> SubordinationAlgebra:
    return parse_algebra(resolve_path(path, relative_to).read_text())


# -- spaces -------------------------------------------------------------------


def parse_space(text: str, generate: bool = False) -> FiniteSpace:
    header, rest = _expect_header(_meaningful_lines(text), "points", "space")
    names = tuple(header.split())
    index = {name: i for i, name in enumerate(names)}
    masks = []
    for line in rest:
        if not line.startswith("open:"):
            raise InputError(f"unexpected line in space file: {line!r}")
        mask = 0
        for token in line[5:].split():
            if token not in index:
                raise InputError(f"unknown point {token!r} in open set")
            mask |= 1 << index[token]
        masks.append(mask)
    if generate:
        return generate_topology(names, masks)
    return FiniteSpace(names, tuple(sorted(set(masks))))


def dump_space(space: FiniteSpace) -> str:
    lines = ["points: " + " ".join(space.point_names)]
    for u in space.opens:
        members = [space.point_names[i] for i in space.points() if u >> i & 1]
        lines.append(("open: " + " ".join(members)).rstrip())
    return "\n".join(lines) + "\n"


def load_space(
    path: str | Path, generate: bool = False, relative_to: Path | None = None
) -> FiniteSpace:
    return parse_space(resolve_path(path, relative_to).read_text(), generate)


# -- frames -------------------------------------------------------------------


def parse_frame(text: str) -> FiniteFrame:
    names, rows, bottom, top = parse_frame_poset(text)
    frame = FiniteFrame(names, rows)
    if bottom is not None and frame.names[frame.bottom] != bottom:
        raise InputError(
            f"bottom annotation {bottom!r} does not match computed "
            f"{frame.names[frame.bottom]!r}"
        )
    if top is not None and frame.names[frame.top] != top:
        raise InputError(
            f"top annotation {top!r} does not match computed "
            f"{frame.names[frame.top]!r}"
        )
    return frame


def parse_frame_poset(
    text: str,
) -> tuple[tuple[str, ...], tuple[int, ...], str | None, str | None]:
    """Element list and the reflexive-transitive closure of the leq lines."""
    header, rest = _expect_header(_meaningful_lines(text), "elements", "frame")
    names = tuple(header.split())
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    rows = [1 << i for i in range(n)]
    bottom = top = None
    for line in rest:
        if line.startswith("leq:"):
            parts = line[4:].split()
            if len(parts) != 2:
                raise InputError(f"bad order line: {line!r}")
            for p in parts:
                if p not in index:
                    raise InputError(f"unknown element {p!r} in order line")
            rows[index[parts[0]]] |= 1 << index[parts[1]]
        elif line.startswith("bottom:"):
            bottom = line[7:].strip()
        elif line.startswith("top:"):
            top = line[4:].strip()
        else:
            raise InputError(f"unexpected line in frame file: {line!r}")
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                acc |= rows[j]
                m &= m - 1
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return names, tuple(rows), bottom, top


def dump_frame(frame: FiniteFrame) -> str:
    lines = ["elements: " + " ".join(frame.names)]
    for i in frame.elements():
        for j in frame.elements():
            if i == j or not frame.le(i, j):
                continue
            # emit cover pairs only; closure restores the rest
            between = frame.le_rows[i] & frame.down_rows[j] & ~(1 << i) & ~(1 << j)
            if between:
                continue
            lines.append(f"leq: {frame.names[i]} {frame.names[j]}")
    lines.append("bottom: " + frame.names[frame.bottom])
    lines.append("top: " + frame.names[frame.top])
    return "\n".join(lines) + "\n"


def load_frame(path: str | Path, relative_to: Path | None = None) -> FiniteFrame:
    return parse_frame(resolve_path(path, relative_to).read_text())


# -- morphisms and point maps ---------------------------------------------------


def load_morphism(path: str | Path, relative_to: Path | None = None) -> MorphismTable:
    p = resolve_path(path, relative_to)
    lines = _meaningful_lines(p.read_text())
    src_ref, lines = _expect_header(lines, "source", "morphism")
    tgt_ref, lines = _expect_header(lines, "target", "morphism")
    source = load_algebra(src_ref, relative_to=p.parent)
    target = load_algebra(tgt_ref, relative_to=p.parent)
    mapping: dict[int, int] = {}
    for line in lines:
        if not line.startswith("map:"):
            raise InputError(f"unexpected line in morphism file: {line!r}")
        parts = line[4:].split()
        if len(parts) != 2:
            raise InputError(f"bad map line: {line!r}")
        a = source.base.parse_element(parts[0])
        if a in mapping:
            raise InputError(f"duplicate map line for {parts[0]}")
        mapping[a] = target.base.parse_element(parts[1])
    missing = [a for a in source.base.elements() if a not in mapping]
    if missing:
        tokens = ", ".join(source.base.element_token(a) for a in missing)
        raise InputError(f"morphism file misses map lines for: {tokens}")
    return MorphismTable(
        source, target, tuple(mapping[a] for a in source.base.elements())
    )


def dump_morphism(h: MorphismTable, source_label: str, target_label: str) -> str:
    lines = [f"source: {source_label}", f"target: {target_label}"]
    for a in h.source.base.elements():
        lines.append(
            f"map: {h.source.base.element_token(a)} "
            f"{h.target.base.element_token(h.mapping[a])}"
        )
    return "\n".join(lines) + "\n"


def _load_space_ref(ref: str, relative_to: Path | None) -> FiniteSpace:
    if ref.startswith("dual:"):
        return dual_space(load_algebra(ref[5:], relative_to))
    return load_space(ref, relative_to=relative_to)


def load_point_map(path: str | Path, relative_to: Path | None = None) -> PointMap:
    p = resolve_path(path, relative_to)
    lines = _meaningful_lines(p.read_text())
    src_ref, lines = _expect_header(lines, "source", "point map")
    tgt_ref, lines = _expect_header(lines, "target", "point map")
    source = _load_space_ref(src_ref, p.parent)
    target = _load_space_ref(tgt_ref, p.parent)
    mapping: dict[int, int] = {}
    for line in lines:
        if not line.startswith("map:"):
            raise InputError(f"unexpected line in point map file: {line!r}")
        parts = line[4:].split()
        if len(parts) != 2:
            raise InputError(f"bad map line: {line!r}")
        x = source.point_index(parts[0])
        if x in mapping:
            raise InputError(f"duplicate map line for {parts[0]}")
        mapping[x] = target.point_index(parts[1])
    missing = [x for x in source.points() if x not in mapping]
    if missing:
        names = ", ".join(source.point_names[x] for x in missing)
        raise InputError(f"point map file misses map lines for: {names}")
    return PointMap(source, target, tuple(mapping[x] for x in source.points()))


def dump_point_map(f: PointMap, source_label: str, target_label: str) -> str:
    lines = [f"source: {source_label}", f"target: {target_label}"]
    for x in f.source.points():
        lines.append(
            f"map: {f.source.point_names[x]} {f.target.point_names[f.mapping[x]]}"
        )
    return "\n".join(lines) + "\n"


def morphism_refs(path: str | Path, relative_to: Path | None = None) -> tuple[str, str]:
    """The source and target references named in a map file's header."""
    lines = _meaningful_lines(resolve_path(path, relative_to).read_text())
    src_ref, lines = _expect_header(lines, "source", "map")
    tgt_ref, _ = _expect_header(lines, "target", "map")
    return src_ref, tgt_ref


# -- valuations ------------------------------------------------------------------


def load_valuation(
    path: str | Path,
    algebra: SubordinationAlgebra | None = None,
    space: FiniteSpace | None = None,
    relative_to: Path | None = None,
) -> dict[str, int]:
    lines = _meaningful_lines(resolve_path(path, relative_to).read_text())
    out: dict[str, int] = {}
    for line in lines:
        if not line.startswith("val:"):
            raise InputError(f"unexpected line in valuation file: {line!r}")
        body = line[4:].strip()
        name, _, rest = body.partition(" ")
        rest = rest.strip()
        if not name or not rest:
            raise InputError(f"bad valuation line: {line!r}")
        if name in out:
            raise InputError(f"duplicate valuation for {name!r}")
        if rest.startswith("open:"):
            if space is None:
                raise InputError("subset valuation given but no space provided")
            mask = 0
            for token in rest[5:].split():
                mask |= 1 << space.point_index(token)
            out[name] = mask
        else:
            if algebra is None:
                raise InputError("element valuation given but no algebra provided")
            out[name] = algebra.base.parse_element(rest)
    return out


# -- file kind sniffing ------------------------------------------------------------


def sniff_kind(path: str | Path, relative_to: Path | None = None) -> str:
    lines = _meaningful_lines(resolve_path(path, relative_to).read_text())
    if not lines:
        raise InputError(f"empty input file: {path}")
    head = lines[0].split(":")[0]
    kinds = {"atoms": "algebra", "points": "space", "elements": "frame",
             "source": "map"}
    if head not in kinds:
        raise InputError(f"unrecognized input file {path}: starts with {lines[0]!r}")
    return kinds[head]
