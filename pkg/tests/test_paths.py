"""Edge-path algebra: construction, concatenation, inversion, powers,
translation, and exact value extrema along the vertices."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmprobe.errors import ModelMismatchError
from qmprobe.exact import ExactReal
from qmprobe.groups import Generator
from qmprobe.paths import Path, path_from_letters, phi_extrema, straight_path

ZERO = ExactReal(0)


def _letters(model, max_len=6):
    gens = st.sampled_from(model.generators())
    return st.lists(gens, min_size=0, max_size=max_len)


# -- construction -------------------------------------------------------


def test_path_needs_a_vertex():
    with pytest.raises(ValueError):
        Path(())


def test_path_rejects_non_adjacent_vertices(f2):
    a = f2.parse_element("a")
    ab = f2.parse_element("a b")
    with pytest.raises(ValueError):
        Path((a.model.identity(), ab))
    # distance zero is just as bad as distance two
    with pytest.raises(ValueError):
        Path((a, a))


def test_path_rejects_mixed_models(f2, z2):
    with pytest.raises(ModelMismatchError):
        Path((f2.identity(), z2.parse_element("a")))


def test_single_vertex_path(f2):
    p = Path((f2.identity(),))
    assert len(p) == 0
    assert p.origin == p.terminus == f2.identity()
    assert p.edge_letters() == ()


# -- letters round trip -------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_letters_round_trip(f2, data):
    letters = data.draw(_letters(f2))
    p = path_from_letters(f2.identity(), letters)
    assert len(p) == len(letters)
    assert p.edge_letters() == tuple(letters)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_letters_round_trip_abelian(z2, data):
    letters = data.draw(_letters(z2))
    p = path_from_letters(z2.identity(), letters)
    assert p.edge_letters() == tuple(letters)


# -- concat / invert / power / translate --------------------------------


def test_concat_translates_second_path(f2):
    p = path_from_letters(f2.identity(), f2.parse_word("a b"))
    q = path_from_letters(f2.identity(), f2.parse_word("b a^-1"))
    pq = p.concat(q)
    assert pq.origin == f2.identity()
    assert pq.terminus == f2.parse_element("a b b a^-1")
    assert pq.edge_letters() == p.edge_letters() + q.edge_letters()


def test_concat_ignores_second_basepoint(f2):
    p = path_from_letters(f2.identity(), f2.parse_word("a"))
    q = path_from_letters(f2.parse_element("b b b"), f2.parse_word("a"))
    assert p.concat(q).terminus == f2.parse_element("a a")


def test_concat_model_mismatch(f2, z2):
    p = Path((f2.identity(),))
    q = Path((z2.identity(),))
    with pytest.raises(ModelMismatchError):
        p.concat(q)


def test_invert_reverses(f2):
    p = path_from_letters(f2.identity(), f2.parse_word("a b a^-1"))
    r = p.invert()
    assert r.origin == p.terminus
    assert r.terminus == p.origin
    assert r.invert() == p
    # reversed edges traverse the inverse letters in the opposite order
    assert r.edge_letters() == tuple(
        Generator(gen.index, not gen.inverse) for gen in reversed(p.edge_letters())
    )


def test_power_iterates_concatenation(f2):
    p = path_from_letters(f2.identity(), f2.parse_word("a b"))
    cube = p.power(3)
    assert len(cube) == 6
    assert cube.terminus == f2.parse_element("a b a b a b")
    assert p.power(1) == p
    assert p.power(-1) == p.invert()
    back = p.power(-2)
    assert back.origin == p.terminus
    assert back.terminus == f2.parse_element("b^-1 a^-1")
    with pytest.raises(ValueError):
        p.power(0)


def test_translate_moves_basepoint_keeping_letters(f2):
    p = path_from_letters(f2.identity(), f2.parse_word("a b"))
    g = f2.parse_element("b a")
    t = p.translate(g)
    assert t.origin == g
    assert t.edge_letters() == p.edge_letters()


# -- straight paths -----------------------------------------------------


def test_straight_path_spells_normal_form(f2):
    x = f2.parse_element("a b")
    y = f2.parse_element("a b a^-1 b")
    p = straight_path(x, y)
    assert p.origin == x
    assert p.terminus == y
    assert len(p) == x.distance(y)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_straight_path_is_geodesic_in_free(f2, data):
    letters_x = data.draw(_letters(f2, 4))
    letters_y = data.draw(_letters(f2, 4))
    x = path_from_letters(f2.identity(), letters_x).terminus
    y = path_from_letters(f2.identity(), letters_y).terminus
    p = straight_path(x, y)
    assert p.origin == x and p.terminus == y
    assert len(p) == x.distance(y)


def test_straight_path_abelian_endpoints(z2):
    x = z2.parse_element("a c")
    y = z2.parse_element("c^-1")
    p = straight_path(x, y)
    assert p.origin == x and p.terminus == y
    assert len(p) == x.distance(y)


# -- extrema ------------------------------------------------------------


def test_phi_extrema_includes_endpoints(psibar_ab, f2):
    # along 1 -> a -> ab -> abab the maximum sits at the far endpoint
    p = path_from_letters(f2.identity(), f2.parse_word("a b a b"))
    lo, hi = phi_extrema(psibar_ab, p)
    assert lo == ZERO
    assert hi == ExactReal(2)


def test_phi_extrema_interior_dip(psibar_ab, f2):
    # both endpoints sit at value 1 but the path passes through the
    # identity, so the reported minimum is the interior value 0
    p = straight_path(f2.parse_element("a b"), f2.parse_element("b a"))
    lo, hi = phi_extrema(psibar_ab, p)
    assert lo == ZERO
    assert hi == ExactReal(1)


def test_phi_extrema_single_vertex(psibar_ab, f2):
    g = f2.parse_element("a b")
    lo, hi = phi_extrema(psibar_ab, Path((g,)))
    assert lo == hi == psibar_ab.homogeneous_value(g)
