"""Text formats: round-trips, error reporting, path resolution."""

import pytest

from devries.errors import InputError
from devries.formats import (
    FIXTURE_DIR_ENV,
    dump_algebra,
    dump_frame,
    dump_morphism,
    dump_point_map,
    dump_space,
    load_algebra,
    load_morphism,
    load_point_map,
    load_valuation,
    parse_algebra,
    parse_frame,
    parse_space,
    resolve_path,
    sniff_kind,
)
from devries.frames import powerset_frame, round_ideal_frame
from devries.duality import dual_space

from conftest import FIXTURES, leq_algebra, trivial_subordination


def test_algebra_roundtrip(b2, c2):
    for alg in (b2, c2, leq_algebra(0), leq_algebra(3)):
        assert parse_algebra(dump_algebra(alg)) == alg


def test_algebra_file_contents():
    alg = load_algebra(FIXTURES / "b2.alg")
    assert alg.base.atom_names == ("p", "q")
    assert alg.is_leq_relation()
    c2 = load_algebra(FIXTURES / "c2.alg")
    assert not c2.is_leq_relation()
    assert c2.prec(0, 0) and c2.prec(1, 3) and not c2.prec(1, 1)


def test_algebra_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("prec: leq\n")
    with pytest.raises(InputError):
        load_algebra(bad)
    bad.write_text("atoms: p q\nprec: leq\nprec: {p} {p}\n")
    with pytest.raises(InputError):
        load_algebra(bad)
    bad.write_text("atoms: p q\nprec: {z} 1\n")
    with pytest.raises(InputError):
        load_algebra(bad)


def test_space_roundtrip(s3, sierpinski):
    assert parse_space(dump_space(s3)) == s3
    assert parse_space(dump_space(sierpinski)) == sierpinski


def test_space_generate_flag():
    text = "points: a b\nopen: a\n"
    with pytest.raises(InputError):
        parse_space(text)
    space = parse_space(text, generate=True)
    assert space.opens == (0, 1, 3)


def test_space_empty_open_line():
    text = "points: x\nopen:\nopen: x\n"
    space = parse_space(text)
    assert space.opens == (0, 1)


def test_frame_roundtrip():
    for frame in (powerset_frame(("p", "q")), round_ideal_frame(leq_algebra(2))):
        again = parse_frame(dump_frame(frame))
        assert again.names == frame.names
        assert again.le_rows == frame.le_rows


def test_frame_closure_applied(tmp_path):
    text = "elements: a b c\nleq: a b\nleq: b c\n"
    frame = parse_frame(text)
    assert frame.le(0, 2)  # transitive closure supplies a <= c


def test_frame_annotations_checked():
    text = "elements: a b\nleq: a b\nbottom: b\n"
    with pytest.raises(InputError):
        parse_frame(text)


def test_morphism_roundtrip(tmp_path):
    h = load_morphism(FIXTURES / "collapse_p.mor")
    assert h.mapping == (0, 0, 1, 1)
    text = dump_morphism(h, "b2.alg", "b1.alg")
    out = tmp_path / "again.mor"
    out.write_text(text)
    (tmp_path / "b2.alg").write_text((FIXTURES / "b2.alg").read_text())
    (tmp_path / "b1.alg").write_text((FIXTURES / "b1.alg").read_text())
    again = load_morphism(out)
    assert again.mapping == h.mapping


def test_morphism_missing_line(tmp_path):
    bad = tmp_path / "bad.mor"
    (tmp_path / "b2.alg").write_text((FIXTURES / "b2.alg").read_text())
    (tmp_path / "b1.alg").write_text((FIXTURES / "b1.alg").read_text())
    bad.write_text("source: b2.alg\ntarget: b1.alg\nmap: 0 0\n")
    with pytest.raises(InputError):
        load_morphism(bad)


def test_point_map_with_dual_reference(tmp_path):
    (tmp_path / "b2.alg").write_text("atoms: a b\nprec: leq\n")
    (tmp_path / "one.space").write_text("points: x\nopen:\nopen: x\n")
    pm = tmp_path / "to_dual.pmap"
    pm.write_text("source: one.space\ntarget: dual:b2.alg\nmap: x F1\n")
    f = load_point_map(pm)
    assert f.target.point_count == 3
    assert f.target.point_names[f.mapping[0]] == "F1"


def test_point_map_dump(s3, one_point):
    from devries.duality import PointMap

    f = PointMap(s3, one_point, (0, 0, 0))
    text = dump_point_map(f, "s3.space", "one.space")
    assert "map: F{a} x" in text


def test_valuation_file(tmp_path, b2, s3):
    v = tmp_path / "v.val"
    v.write_text("val: p {p}\nval: q 1\n")
    alg = load_algebra(FIXTURES / "b2.alg")
    values = load_valuation(v, algebra=alg)
    assert values == {"p": 1, "q": 3}
    v.write_text("val: p open: F{a}\n")
    values = load_valuation(v, space=s3)
    assert values == {"p": 1 << s3.point_index("F{a}")}
    v.write_text("val: p {p}\n")
    with pytest.raises(InputError):
        load_valuation(v, space=s3)


def test_fixture_dir_resolution(tmp_path, monkeypatch):
    target = tmp_path / "somewhere.alg"
    target.write_text("atoms: u\nprec: leq\n")
    monkeypatch.setenv(FIXTURE_DIR_ENV, str(tmp_path))
    alg = load_algebra("somewhere.alg")
    assert alg.base.atom_count == 1
    monkeypatch.delenv(FIXTURE_DIR_ENV)
    with pytest.raises(InputError):
        resolve_path("somewhere.alg")


def test_sniff_kind():
    assert sniff_kind(FIXTURES / "b2.alg") == "algebra"
    assert sniff_kind(FIXTURES / "sierpinski.space") == "space"
    assert sniff_kind(FIXTURES / "p2.frame") == "frame"
    assert sniff_kind(FIXTURES / "collapse_p.mor") == "map"


def test_dualize_output_reloads(b2, b3):
    for alg in (b2, b3):
        text = dump_space(dual_space(alg))
        again = parse_space(text)
        assert again == dual_space(alg)
