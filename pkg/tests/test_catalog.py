import pytest

from commprob.branching import cp2_classcount
from commprob.catalog import (
    SMALL_GROUPS,
    GroupDescriptor,
    build,
    metadata,
    order_formula,
    parse,
)
from commprob.errors import InputError, SizeCapError
from commprob.groups import conjugacy_classes, is_abelian, is_solvable


def test_parse_roundtrip():
    for text in ("GL(2,3)", "CxC(2,4)", "Q8", "PSL(2,7)", "UT(3,5)", "M(3,2)"):
        d = parse(text)
        assert str(d) == text
        assert parse(str(d)) == d


def test_parse_whitespace_insensitive():
    assert parse(" GL ( 2 , 3 ) ") == GroupDescriptor("GL", (2, 3))


def test_parse_errors_carry_position():
    with pytest.raises(InputError, match="position"):
        parse("GL(2,)")
    with pytest.raises(InputError, match="position"):
        parse("GL(2,3")
    with pytest.raises(InputError, match="position"):
        parse("X(5)")


def test_parse_rejects_bad_parameters():
    with pytest.raises(InputError):
        parse("U(4,2)")  # unsupported degree
    with pytest.raises(InputError):
        parse("GL(2,6)")  # not a prime power
    with pytest.raises(InputError):
        parse("UT(3,4)")  # p not prime
    with pytest.raises(InputError):
        parse("C(0)")
    with pytest.raises(InputError):
        parse("Sp(4,3)")


def test_orders_match_formulas():
    expected = {
        "C(6)": 6,
        "CxC(2,4)": 8,
        "S(4)": 24,
        "A(5)": 60,
        "D(4)": 8,
        "Q8": 8,
        "UT(3,2)": 8,
        "UT(3,3)": 27,
        "GL(2,2)": 6,
        "GL(2,3)": 48,
        "GL(3,2)": 168,
        "SL(2,3)": 24,
        "Sp(2,3)": 24,
        "U(2,2)": 18,
        "U(3,2)": 648,
        "PSL(2,5)": 60,
    }
    for text, order in expected.items():
        assert order_formula(text) == order
        assert build(text).order == order


def test_u22_order_18():
    assert build("U(2,2)").order == 2 * 3 * 3


def test_gl32_order_168():
    assert build("GL(3,2)").order == 7 * 6 * 4


def test_u32_order_648():
    assert build("U(3,2)").order == 8 * 3 * 3 * 9


def test_psl25_matches_a5_class_sizes():
    psl = sorted(c.size for c in conjugacy_classes(build("PSL(2,5)").full()).classes)
    a5 = sorted(c.size for c in conjugacy_classes(build("A(5)").full()).classes)
    assert psl == a5 == [1, 12, 12, 15, 20]


def test_sp2_equals_sl2_element_sets():
    for q in (2, 3, 5):
        sp = build(f"Sp(2,{q})")
        sl = build(f"SL(2,{q})")
        assert sp._data == sl._data


def test_ut3_2_is_dihedral():
    # UT(3,2) and D(4) are isomorphic: same order, class sizes, cp_2
    a, b = build("UT(3,2)"), build("D(4)")
    assert a.order == b.order == 8
    assert sorted(c.size for c in conjugacy_classes(a.full()).classes) == \
        sorted(c.size for c in conjugacy_classes(b.full()).classes)
    assert cp2_classcount(a) == cp2_classcount(b)


def test_monoid_descriptor_not_buildable():
    with pytest.raises(InputError, match="monoid"):
        build("M(2,2)")


def test_size_cap_rejects_before_construction():
    with pytest.raises(SizeCapError):
        build("GL(3,5)")
    with pytest.raises(SizeCapError):
        build("S(9)")


def test_metadata_flags_truthful():
    for text in SMALL_GROUPS:
        G = build(text)
        meta = metadata(text)
        assert meta.abelian == is_abelian(G.full()), text
        if meta.solvable is not None:
            assert meta.solvable == is_solvable(G.full()), text


def test_metadata_p_groups():
    assert metadata("Q8").p_group == 2
    assert metadata("UT(3,3)").p_group == 3
    assert metadata("S(3)").p_group is None


def test_simple_flag_no_class_closed_normal_subgroup():
    # a class generates a normal subgroup (the generating set is closed
    # under conjugation); in a simple group every non-identity class
    # must generate everything
    for text in ("A(5)", "PSL(2,5)", "PSL(2,7)", "PSL(2,9)"):
        meta = metadata(text)
        assert meta.simple
        G = build(text)
        if G.order > 1000:
            continue
        for c in conjugacy_classes(G.full()).classes:
            if c.rep == 0:
                continue
            generated = _subgroup_generated_by(G, c.members)
            assert len(generated) == G.order, (text, c.rep)


def _subgroup_generated_by(G, gen_ids):
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for cur in frontier:
            for g in gen_ids:
                p = G.mul(g, cur)
                if p not in members:
                    members.add(p)
                    nxt.append(p)
        frontier = nxt
    return members


def test_builds_are_cached():
    assert build("S(4)") is build("S(4)")
