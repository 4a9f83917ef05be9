"""The two object maps between algebras and spaces, their action on
morphisms, and machine checks of the representation and duality facts.

Verification always drives the canonical witness maps (an element to
the set of concordant filters containing it, a point to its set of
regular-open neighborhoods) rather than searching for arbitrary
isomorphisms, so a wiring bug cannot hide behind a lucky bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, PreconditionError, VerificationError
from .filters import Filter, concordant_filters
from .spaces import FiniteSpace, generate_topology, ro_algebra, regular_opens_at
from .spaces import is_dv_space, verify_point_homeomorphism, _subset
from .subordination import SubordinationAlgebra, is_compingent
from .verdicts import Check, Report


# -- algebra to space ---------------------------------------------------------


@lru_cache(maxsize=None)
def dual_space(alg: SubordinationAlgebra) -> FiniteSpace:
    """The space of concordant filters with its generated topology."""
    gens = [f.generator for f in concordant_filters(alg)]
    names = tuple("F" + alg.base.element_token(g) for g in gens)
    hats = [_hat(gens, a) for a in alg.base.elements()]
    return generate_topology(names, hats)


def _hat(gens: list[int], a: int) -> int:
    mask = 0
    for i, g in enumerate(gens):
        if g & ~a == 0:
            mask |= 1 << i
    return mask


@lru_cache(maxsize=None)
def hat_masks(alg: SubordinationAlgebra) -> tuple[int, ...]:
    """hat_masks[a] = the set of dual-space points whose filter contains a."""
    gens = [f.generator for f in concordant_filters(alg)]
    return tuple(_hat(gens, a) for a in alg.base.elements())


def dual_point_generators(alg: SubordinationAlgebra) -> tuple[int, ...]:
    return tuple(f.generator for f in concordant_filters(alg))


# -- space to algebra ---------------------------------------------------------


def regular_open_algebra(
    space: FiniteSpace,
) -> tuple[SubordinationAlgebra, tuple[int, ...]]:
    """The regular opens of a space under the spatial subordination,
    re-atomized to the canonical Boolean encoding.  Also returns the
    decode table from algebra elements to point sets."""
    return ro_algebra(space)


# -- representation -----------------------------------------------------------


def verify_representation(alg: SubordinationAlgebra) -> Report:
    """The canonical map is a Boolean isomorphism onto the regular opens
    of the dual space that translates the subordination both ways."""
    if not is_compingent(alg):
        raise PreconditionError("representation is stated for compingent algebras")
    space = dual_space(alg)
    hats = hat_masks(alg)
    base = alg.base
    ro = space.regular_opens

    bijective = sorted(set(hats)) == sorted(ro) and len(set(hats)) == base.size
    checks = [Check("bijection-onto-RO", bijective)]

    ops_ok = hats[0] == 0 and hats[base.top] == space.full
    witness = ""
    for a in base.elements():
        if hats[base.complement(a)] != space.perp(hats[a]):
            ops_ok, witness = False, f"complement at {base.element_token(a)}"
            break
        for b in base.elements():
            if hats[a & b] != hats[a] & hats[b]:
                ops_ok, witness = False, (
                    f"meet at {base.element_token(a)}, {base.element_token(b)}"
                )
                break
        if not ops_ok:
            break
    checks.append(Check("boolean-operations", ops_ok, witness))

    prox_ok, witness = True, ""
    for a in base.elements():
        for b in base.elements():
            if alg.prec(a, b) != space.ll(hats[a], hats[b]):
                prox_ok, witness = False, (
                    f"{base.element_token(a)} vs {base.element_token(b)}"
                )
                break
        if not prox_ok:
            break
    checks.append(Check("subordination-translates", prox_ok, witness))
    return Report(tuple(checks))


def representation_witness(alg: SubordinationAlgebra) -> list[tuple[str, str]]:
    space = dual_space(alg)
    hats = hat_masks(alg)
    return [
        (alg.base.element_token(a), space.subset_token(hats[a]))
        for a in alg.base.elements()
    ]


def verify_hat_basics(alg: SubordinationAlgebra) -> Report:
    """Elementwise structure of the canonical map: intersections, basis,
    specialization-as-inclusion, order embedding, complement via the
    closure complement, and both regularity identities."""
    if not is_compingent(alg):
        raise PreconditionError("stated for compingent algebras")
    space = dual_space(alg)
    hats = hat_masks(alg)
    base = alg.base
    gens = dual_point_generators(alg)

    meets = all(
        hats[a & b] == hats[a] & hats[b]
        for a in base.elements() for b in base.elements()
    )
    basis = space.is_basis(tuple(sorted(set(hats))))
    spec_is_inclusion = all(
        space.spec_le(i, j) == (gens[j] & ~gens[i] == 0)
        for i in range(len(gens)) for j in range(len(gens))
    )
    order_embedding = all(
        _subset(hats[a], hats[b]) == base.leq(a, b)
        for a in base.elements() for b in base.elements()
    )
    perp_is_complement = all(
        space.perp(hats[a]) == hats[base.complement(a)] for a in base.elements()
    )
    regular = all(
        space.up_interior(space.down(hats[a])) == hats[a]
        and space.perp(space.perp(hats[a])) == hats[a]
        for a in base.elements()
    )
    return Report((
        Check("hat-meets", meets),
        Check("hat-basis", basis),
        Check("specialization-is-inclusion", spec_is_inclusion),
        Check("hat-order-embedding", order_embedding),
        Check("hat-perp-complement", perp_is_complement),
        Check("hat-regular", regular),
    ))


def verify_space_roundtrip(space: FiniteSpace) -> Report:
    """The neighborhood map is a homeomorphism onto the dual space of
    the space's regular-open algebra."""
    dv = is_dv_space(space)
    if not dv.ok:
        raise PreconditionError("space round-trip is stated for dV-spaces")
    alg, decode = ro_algebra(space)
    encode = {u: e for e, u in enumerate(decode)}
    target = dual_space(alg)
    gens = dual_point_generators(alg)
    index_of_gen = {g: i for i, g in enumerate(gens)}
    mapping = []
    for x in space.points():
        g = space.full
        for u in regular_opens_at(space, x):
            g &= u
        e = encode[g]
        if e not in index_of_gen:
            raise VerificationError(
                f"neighborhood filter of {space.point_names[x]} is not a point "
                "of the dual space"
            )
        mapping.append(index_of_gen[e])
    return verify_point_homeomorphism(space, target, tuple(mapping))


# -- morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class MorphismTable:
    """A total element map between subordination algebras."""

    source: SubordinationAlgebra
    target: SubordinationAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.base.size:
            raise InputError("morphism table must cover every source element")
        for v in self.mapping:
            self.target.base.check_element(v)

    def __call__(self, a: int) -> int:
        self.source.base.check_element(a)
        return self.mapping[a]


@dataclass(frozen=True)
class PointMap:
    """A total point map between finite spaces."""

    source: FiniteSpace
    target: FiniteSpace
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.point_count:
            raise InputError("point map must cover every source point")
        for v in self.mapping:
            if not 0 <= v < self.target.point_count:
                raise InputError("point map hits an unknown target point")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def preimage(self, v: int) -> int:
        out = 0
        for x in range(len(self.mapping)):
            if v >> self.mapping[x] & 1:
                out |= 1 << x
        return out


def identity_morphism(alg: SubordinationAlgebra) -> MorphismTable:
    return MorphismTable(alg, alg, tuple(alg.base.elements()))


def identity_point_map(space: FiniteSpace) -> PointMap:
    return PointMap(space, space, tuple(space.points()))


def check_devries_morphism(h: MorphismTable) -> Report:
    """The four morphism conditions, plus the consequence that the order
    and the subordination are preserved."""
    if not (is_compingent(h.source) and is_compingent(h.target)):
        raise PreconditionError("morphism check is stated between compingent algebras")
    src, tgt = h.source, h.target
    sb, tb = src.base, tgt.base
    checks = []

    ok = h.mapping[0] == 0
    checks.append(Check("V1", ok, "" if ok else f"h(0) = {tb.element_token(h.mapping[0])}"))

    v2_ok, det = True, ""
    for a in sb.elements():
        for b in sb.elements():
            if h.mapping[a & b] != h.mapping[a] & h.mapping[b]:
                v2_ok, det = False, f"{sb.element_token(a)}, {sb.element_token(b)}"
                break
        if not v2_ok:
            break
    checks.append(Check("V2", v2_ok, det))

    v3_ok, det = True, ""
    for a in sb.elements():
        for b in sb.elements():
            if not src.prec(a, b):
                continue
            lhs = tb.complement(h.mapping[sb.complement(a)])
            if not tgt.prec(lhs, h.mapping[b]):
                v3_ok, det = False, f"{sb.element_token(a)} before {sb.element_token(b)}"
                break
        if not v3_ok:
            break
    checks.append(Check("V3", v3_ok, det))

    v4_ok, det = True, ""
    for a in sb.elements():
        acc = 0
        for b in sb.elements():
            if src.prec(b, a):
                acc |= h.mapping[b]
        if acc != h.mapping[a]:
            v4_ok, det = False, sb.element_token(a)
            break
    checks.append(Check("V4", v4_ok, det))

    leq_ok = all(
        tb.leq(h.mapping[a], h.mapping[b])
        for a in sb.elements() for b in sb.elements() if sb.leq(a, b)
    )
    checks.append(Check("preserves-order", leq_ok))
    prec_ok = all(
        tgt.prec(h.mapping[a], h.mapping[b])
        for a in sb.elements() for b in sb.elements() if src.prec(a, b)
    )
    checks.append(Check("preserves-subordination", prec_ok))
    return Report(tuple(checks))


def star_compose(k: MorphismTable, h: MorphismTable) -> MorphismTable:
    """Composition a -> join of k(h(b)) over b below a in the source
    subordination; the result is checked to be a valid morphism."""
    if h.target != k.source:
        raise InputError("morphism domains do not compose")
    if not check_devries_morphism(h).ok or not check_devries_morphism(k).ok:
        raise PreconditionError("star composition needs valid morphisms")
    src = h.source
    mapping = []
    for a in src.base.elements():
        acc = 0
        for b in src.base.elements():
            if src.prec(b, a):
                acc |= k.mapping[h.mapping[b]]
        mapping.append(acc)
    out = MorphismTable(src, k.target, tuple(mapping))
    if not check_devries_morphism(out).ok:
        raise VerificationError("star composite failed the morphism conditions")
    return out


def check_dv_map(f: PointMap) -> Report:
    """Continuity plus weak density over the specialization orders."""
    if not is_dv_space(f.source).ok or not is_dv_space(f.target).ok:
        raise PreconditionError("map check is stated between dV-spaces")
    src, tgt = f.source, f.target
    cont_ok, det = True, ""
    open_set = set(src.opens)
    for v in tgt.opens:
        if f.preimage(v) not in open_set:
            cont_ok, det = False, f"preimage of {tgt.subset_token(v)}"
            break
    checks = [Check("continuous", cont_ok, det)]

    wd_ok, det = True, ""
    for x in src.points():
        for y in tgt.points():
            if not tgt.spec_le(f.mapping[x], y):
                continue
            if not any(
                src.spec_le(x, x2) and tgt.spec_le(y, f.mapping[x2])
                for x2 in src.points()
            ):
                wd_ok, det = False, (
                    f"point {src.point_names[x]} against {tgt.point_names[y]}"
                )
                break
        if not wd_ok:
            break
    checks.append(Check("weakly-dense", wd_ok, det))
    return Report(tuple(checks))


def dual_morphism(f: PointMap) -> MorphismTable:
    """Send a regular open of the target to the regularization of its
    preimage; valid maps induce valid morphisms (checked)."""
    if not check_dv_map(f).ok:
        raise PreconditionError("dual morphism needs a valid map")
    alg_y, dec_y = ro_algebra(f.target)
    alg_x, dec_x = ro_algebra(f.source)
    enc_x = {u: e for e, u in enumerate(dec_x)}
    mapping = []
    for e in alg_y.base.elements():
        pre = f.preimage(dec_y[e])
        mapping.append(enc_x[f.source.perp(f.source.perp(pre))])
    out = MorphismTable(alg_y, alg_x, tuple(mapping))
    rep = check_devries_morphism(out)
    if not rep.ok:
        raise VerificationError("induced morphism failed the morphism conditions")
    return out


def dual_point_map(h: MorphismTable) -> PointMap:
    """Send a concordant filter to the round part of its preimage under
    the morphism; valid morphisms induce valid maps (checked), with the
    continuity identity pre(hat a) = union of hat(h(c)) over c below a."""
    if not check_devries_morphism(h).ok:
        raise PreconditionError("dual map needs a valid morphism")
    src_alg, tgt_alg = h.source, h.target
    space_from = dual_space(tgt_alg)
    space_to = dual_space(src_alg)
    gens_from = dual_point_generators(tgt_alg)
    member_sets = {
        frozenset(Filter(src_alg, g).members()): i
        for i, g in enumerate(dual_point_generators(src_alg))
    }
    mapping = []
    for g in gens_from:
        pre = [a for a in src_alg.base.elements() if g & ~h.mapping[a] == 0]
        core = frozenset(
            a for a in pre if any(src_alg.prec(b, a) for b in pre)
        )
        if core not in member_sets:
            raise VerificationError("round preimage is not a point of the dual space")
        mapping.append(member_sets[core])
    out = PointMap(space_from, space_to, tuple(mapping))
    if not check_dv_map(out).ok:
        raise VerificationError("induced map failed the map conditions")
    hats_from = hat_masks(tgt_alg)
    hats_to = hat_masks(src_alg)
    for a in src_alg.base.elements():
        union = 0
        for c in src_alg.base.elements():
            if src_alg.prec(c, a):
                union |= hats_from[h.mapping[c]]
        if out.preimage(hats_to[a]) != union:
            raise VerificationError("continuity identity failed for the induced map")
    return out


# -- the two duality identities ------------------------------------------------


def _point_index_of(space: FiniteSpace, alg, decode, x: int) -> int:
    encode = {u: e for e, u in enumerate(decode)}
    g = space.full
    for u in regular_opens_at(space, x):
        g &= u
    gens = dual_point_generators(alg)
    return gens.index(encode[g])


def verify_duality_roundtrip(
    alg: SubordinationAlgebra | None = None,
    space: FiniteSpace | None = None,
    h: MorphismTable | None = None,
    f: PointMap | None = None,
) -> Report:
    """Check whichever of the duality obligations apply to the inputs:
    representation for an algebra, the homeomorphism for a space, and
    the two composite identities for morphisms and maps."""
    checks: list[Check] = []
    if alg is not None:
        checks.append(Check("representation", verify_representation(alg).ok))
    if space is not None:
        dv = is_dv_space(space)
        checks.append(Check("dv-space", dv.ok))
        if dv.ok:
            checks.append(Check("space-roundtrip", verify_space_roundtrip(space).ok))
    if h is not None:
        induced = dual_morphism(dual_point_map(h))
        alg1, alg2 = h.source, h.target
        _, dec1 = ro_algebra(dual_space(alg1))
        _, dec2 = ro_algebra(dual_space(alg2))
        enc1 = {u: e for e, u in enumerate(dec1)}
        enc2 = {u: e for e, u in enumerate(dec2)}
        hats1 = hat_masks(alg1)
        hats2 = hat_masks(alg2)
        ok = all(
            induced.mapping[enc1[hats1[a]]] == enc2[hats2[h.mapping[a]]]
            for a in alg1.base.elements()
        )
        checks.append(Check("morphism-identity", ok))
    if f is not None:
        induced = dual_point_map(dual_morphism(f))
        alg_x, dec_x = ro_algebra(f.source)
        alg_y, dec_y = ro_algebra(f.target)
        ok = True
        for x in f.source.points():
            ix = _point_index_of(f.source, alg_x, dec_x, x)
            iy = _point_index_of(f.target, alg_y, dec_y, f.mapping[x])
            if induced.mapping[ix] != iy:
                ok = False
                break
        checks.append(Check("map-identity", ok))
    return Report(tuple(checks))
