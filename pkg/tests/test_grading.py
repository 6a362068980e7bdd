from fractions import Fraction

import pytest

from ahsquant.charalg import irreducible_character
from ahsquant.errors import ConfigurationError, DisplayParseError
from ahsquant.grading import (
    branch_to_levels,
    build_graded_setup,
    density_label,
    density_shift,
    format_display,
    graded_piece_character,
    level_label_characters,
    level_of_label,
    parse_display,
)
from ahsquant.rootsys import dot, weyl_dimension

SETUPS = [("conformal", n) for n in range(6, 13, 2)] + [("projective", n) for n in range(2, 9)]


def adjoint_label(s):
    return max(s.g.positive_roots, key=lambda a: (sum(a), a))


@pytest.mark.parametrize("geometry,n", SETUPS)
def test_grading_element(geometry, n):
    s = build_graded_setup(geometry, n)
    a0 = s.g.simple_roots[s.crossed_node]
    assert s.h0(a0) == 1
    assert all(s.h0(a) == 0 for i, a in enumerate(s.g.simple_roots) if i != s.crossed_node)
    # mu pairs with every weight proportionally to its H0 value
    for a in s.g.positive_roots:
        assert s.g.scale * dot(s.mu, a) == s.mu_pairing * s.h0(a)


@pytest.mark.parametrize("geometry,n", SETUPS)
def test_adjoint_levels(geometry, n):
    s = build_graded_setup(geometry, n)
    levels = branch_to_levels(s, adjoint_label(s))
    assert sorted(levels) == [-1, 0, 1]
    dims = {lvl: sum(weyl_dimension(s.g, lam, s.g0_nodes) * m for lam, m in dec) for lvl, dec in levels.items()}
    d_minus = graded_piece_character(s, -1).dim
    assert d_minus == n
    assert dims[-1] == dims[1] == d_minus
    assert dims[0] == graded_piece_character(s, 0).dim == s.g.rank + sum(1 for a in s.g.positive_roots if s.h0(a) == 0) * 2


def test_conformal_6_example():
    s = build_graded_setup("conformal", 6)
    assert s.g.name == "D4"
    levels = branch_to_levels(s, (1, 1, 0, 0))
    assert levels[0].as_dict() == {(0, 1, 1, 0): 1, (0, 0, 0, 0): 1}
    assert [weyl_dimension(s.g, lam, s.g0_nodes) for lam in levels[0].labels] == [15, 1]
    assert build_graded_setup("conformal", 8).g.name == "D5"
    p3 = build_graded_setup("projective", 3)
    assert p3.g.name == "A3" and graded_piece_character(p3, -1).dim == 3


def test_setup_errors():
    with pytest.raises(ConfigurationError):
        build_graded_setup("conformal", 4)
    with pytest.raises(ConfigurationError, match="allow_odd"):
        build_graded_setup("conformal", 7)
    with pytest.raises(ConfigurationError):
        build_graded_setup("projective", 1)
    with pytest.raises(ConfigurationError):
        build_graded_setup("riemannian", 6)
    s = build_graded_setup("conformal", 7, allow_odd=True)
    assert s.g.name == "B4" and s.extrapolated


def test_level_of_label():
    s = build_graded_setup("conformal", 8)
    assert level_of_label(s, (0, 1, 1, 0, 0)) - level_of_label(s, (1, 1, 0, 0, 0)) == 1
    assert level_of_label(s, (0, 0, 0, 0, 0)) - level_of_label(s, (2, 2, 0, 0, 0)) == 2
    w, w2 = Fraction(5, 2), -3
    assert level_of_label(s, density_label(s, w2)) - level_of_label(s, density_label(s, w)) == w - w2


def test_density_shift():
    s = build_graded_setup("conformal", 6)
    assert density_shift(s, (1, 1, 0, 0), 2) == (3, 1, 0, 0)
    assert density_shift(s, (1, 1, 0, 0), 0) == (1, 1, 0, 0)
    assert density_shift(s, s.g.zero(), Fraction(-7, 2)) == density_label(s, Fraction(-7, 2))
    p = build_graded_setup("projective", 4)
    shifted = density_shift(p, p.g.zero(), 2)
    assert sum(shifted) == 0 and p.h0(shifted) == 2


@pytest.mark.parametrize("n", [6, 8])
def test_branch_s2_adjoint_golden(n):
    s = build_graded_setup("conformal", n)
    m = s.dim
    lab = lambda *c: tuple(c) + (0,) * (m - len(c))
    levels = branch_to_levels(s, lab(2, 2))
    assert levels[-1].as_dict() == {lab(1, 2, 1): 1, lab(1, 1): 1}
    assert levels[0].as_dict() == {lab(0, 2, 2): 1, lab(0, 2): 1, lab(0, 1, 1): 1, lab(0): 1}


@pytest.mark.parametrize("top", [(2, 2, 0, 0, 0), (3, 1, 0, 0, 0), (1, 1, 1, 1, 0)])
def test_slices_partition_character(top):
    s = build_graded_setup("conformal", 8)
    slices = level_label_characters(s, top)
    assert sum(c.dim for c in slices.values()) == weyl_dimension(s.g, top)
    for lvl, chi in slices.items():
        assert {-s.h0(w) for w, _ in chi} == {lvl}
        assert chi.is_weyl_invariant(s.g0_nodes)
    # every slice decomposes and the pieces add back up
    total = sum(
        weyl_dimension(s.g, lam, s.g0_nodes) * k for dec in branch_to_levels(s, top).values() for lam, k in dec
    )
    assert total == irreducible_character(s.g, top).dim


def test_display_round_trip():
    s = build_graded_setup("conformal", 6)
    assert parse_display(s, "(2|2,0,0)") == (2, 2, 0, 0)
    assert parse_display(s, "(0|0,0,0)") == (0, 0, 0, 0)
    x = parse_display(s, "(-7/2|1,0,0)")
    assert x == (Fraction(-7, 2), 1, 0, 0)
    assert format_display(s, x) == "(-7/2|1,0,0)"
    assert parse_display(s, format_display(s, x)) == x
    assert parse_display(s, "( 1 | 1 )", pad=True) == (1, 1, 0, 0)
    assert parse_display(None, "(1|2,3,4,5,6)") == (1, 2, 3, 4, 5, 6)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("2|2,0,0)", 0),
        ("(2,2,0,0)", 2),
        ("(2|2,0,0", 8),
        ("(2|2,x,0)", 5),
        ("(2|2,0,0))", 9),
        ("(2|1/0,0,0)", 3),
    ],
)
def test_display_parse_errors(text, pos):
    s = build_graded_setup("conformal", 6)
    with pytest.raises(DisplayParseError) as err:
        parse_display(s, text)
    assert err.value.position == pos


def test_display_length_checks():
    s = build_graded_setup("conformal", 6)
    with pytest.raises(DisplayParseError, match="too few"):
        parse_display(s, "(1|1)")
    with pytest.raises(DisplayParseError, match="too many"):
        parse_display(s, "(1|1,0,0,0)")
    p = build_graded_setup("projective", 3)
    with pytest.raises(DisplayParseError, match="sum zero"):
        parse_display(p, "(1|0,0,0)")
    assert parse_display(p, "(1|0,0,-1)") == (1, 0, 0, -1)
