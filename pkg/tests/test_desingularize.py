import pytest
from conftest import analysis, sigma_of

from folint.algebra import AFFINE, PROJECTIVE, OneForm
from folint.desingularize import (
    Kind,
    blowup_foliation,
    classify,
    cluster,
    curve_multiplicities,
    dicritical_reduction,
    local_multiplicity,
    singular_points,
)
from folint.extension import extend_to_p2
from folint.lattice import curve_class


def form(a, b):
    return OneForm.affine(AFFINE.parse(a), AFFINE.parse(b))


def test_classify_radial_is_dicritical():
    assert classify(form("y", "-x")) is Kind.DICRITICAL


def test_classify_saddle_is_simple():
    # d(xy): eigenvalue ratio -1
    assert classify(form("y", "x")) is Kind.SIMPLE


def test_classify_resonant_node_is_not_simple():
    # 2y dx - x dy has the first integral y / x^2; the ratio 2 is a positive rational
    assert classify(form("2*y", "-x")) is Kind.ORDINARY


def test_classify_saddle_node_is_simple():
    # x^2 dy - y dx: one zero eigenvalue
    assert classify(form("-y", "x^2")) is Kind.SIMPLE


def test_local_multiplicity():
    assert local_multiplicity(form("x^2 + y^3", "y^2")) == 2
    assert local_multiplicity(form("1 + x", "y")) == 0


def test_blowup_of_radial_point():
    c1, c2, exceptional_invariant = blowup_foliation(form("y", "-x"))
    assert not exceptional_invariant
    # the strict transform is regular in both charts
    assert local_multiplicity(c1) == 0 and local_multiplicity(c2) == 0


def test_blowup_of_saddle_keeps_the_divisor_invariant():
    _, _, exceptional_invariant = blowup_foliation(form("y", "x"))
    assert exceptional_invariant


def test_singular_points_with_conjugates():
    # A = x^2 - 2, B = y^3 - y vanish at (+-sqrt2, 0), (+-sqrt2, +-1): six
    # points in three Galois orbits of size 2
    r = extend_to_p2(AFFINE.parse("x^2 - 2"), AFFINE.parse("y^3 - y"))
    pts = [p for p in singular_points(r.form) if p.chart == ("U_Z",)]
    assert sorted(p.orbit_size for p in pts) == [2, 2, 2]


def test_unbounded_blowups_are_cut_off():
    from folint.desingularize import BlowupBudgetExceeded

    r = extend_to_p2(AFFINE.parse("-4*x^5*y - y^6 - 5*x^4*y^6"), AFFINE.parse("x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5"))
    with pytest.raises(BlowupBudgetExceeded):
        dicritical_reduction(r.form, blowup_budget=5)


@pytest.mark.parametrize(
    "name, n, terminal",
    [
        ("ex41", 5, [2, 3, 4, 5]),
        ("ex42", 11, [5, 6, 7, 9, 11]),
        ("ex43", 36, [6] + list(range(12, 37))),
        ("ex44", 22, [10, 13, 16, 19, 22]),
    ],
)
def test_configurations_of_the_examples(name, n, terminal):
    # [PAPER]
    cfg = analysis(name).config
    assert cfg.n == n
    assert [i + 1 for i in cfg.terminal_ids] == terminal


def test_example_42_tree():
    # [PAPER] parent structure of the proximity graph
    cfg = analysis("ex42").config
    parents = {p.label: (cfg.points[p.parent].label if p.parent is not None else None) for p in cfg.points}
    assert parents == {
        "p1": None, "p2": "p1", "p3": "p2", "p4": "p3", "p5": "p4", "p6": "p4",
        "p7": "p4", "p8": "p3", "p9": "p8", "p10": None, "p11": "p10",
    }


def test_example_44_chains():
    # [PAPER] chains p1..p10, p11..p13, ..., p20..p22; satellites p3, p4 proximate to p1
    cfg = analysis("ex44").config
    roots = [p.id + 1 for p in cfg.points if p.parent is None]
    assert roots == [1, 11, 14, 17, 20]
    for p in cfg.points:
        if p.parent is not None:
            assert p.parent == p.id - 1
    assert [p.id + 1 for p in cfg.points if p.satellite] == [3, 4]


def test_example_43_levels():
    # [PAPER] p2..p6 and p8..p12 are successive infinitely near points
    cfg = analysis("ex43").config
    assert [p.level for p in cfg.points[:12]] == [0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5]
    assert all(p.level == 0 for p in cfg.points[12:])


@pytest.mark.parametrize(
    "name, curve, expected",
    [
        ("ex41", "X0", "F* - E1*"),
        ("ex41", "Y0", "M* - E1* - E2*"),
        ("ex41", "Y1", "-F* + M* - E3* - E4* - E5*"),
        ("ex42", "X0", "F* - E1*"),
        ("ex42", "X1", "F* - E10* - E11*"),
        ("ex42", "Y0", "M* - E1* - E2* - E3*"),
        ("ex43", "X", "L* - E1* - E2* - E3* - E4* - E5* - E6*"),
        ("ex43", "Z", "L* - E7* - E8* - E9* - E10* - E11* - E12*"),
        ("ex44", "X0", "F* - E1*"),
        # Y0 has bidegree (0, 1), so its class starts with M*; the published
        # display starts with F*, which cannot be right for this curve
        ("ex44", "Y0", "M* - E1* - E2* - E11* - E14* - E17* - E20*"),
    ],
)
def test_invariant_curve_classes(name, curve, expected):
    # [PAPER] strict transforms of the coordinate curves
    an = analysis(name)
    assert str(curve_class(an.model, an.config, an.surface.parse(curve))) == expected


def test_cusp_multiplicities():
    # [DERIVED] y^2 = x^3 has multiplicities 2, 1, 1 along its resolution
    # (origin, then the tangent direction y = 0 twice)
    cfg = cluster(PROJECTIVE, [(None, "U_Z", (0, 0)), (0, 1, 0), (1, 2, None), (1, 1, 0)])
    mult = dict(zip([p.orbit for p in cfg.points], curve_multiplicities(PROJECTIVE.parse("Y^2*Z - X^3"), cfg)))
    assert mult == {0: 2, 1: 1, 2: 1, 3: 0}


def test_line_through_points():
    cfg = cluster(PROJECTIVE, [(None, "U_Z", (0, 0)), (None, "U_Z", (1, 1)), (None, "U_Z", (2, 0))])
    mult = dict(zip([p.orbit for p in cfg.points], curve_multiplicities(PROJECTIVE.parse("X - Y"), cfg)))
    assert mult == {0: 1, 1: 1, 2: 0}
