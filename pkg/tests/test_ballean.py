from fractions import Fraction as F

import pytest

from umtk import (
    GenConfig,
    ball_preserving_bijection,
    ballean_to_json,
    decide_weak_similarity,
    enumerate_balls,
    hasse_diagram,
    hasse_digraph_iso,
    hasse_iso_to_json,
    hasse_to_dot,
    hasse_to_json,
    random_ultrametric,
    renamed_copy,
    reversed_is_rooted_tree,
    space_from_pairs,
    verify_ball_preserving,
)
from umtk.errors import NotABijectionError


def test_ball_enumeration(ultra3, semi3):
    assert ballean_to_json(enumerate_balls(ultra3)) == {
        "balls": [["p"], ["q"], ["r"], ["q", "r"], ["p", "q", "r"]]
    }
    # b reaches both neighbours at radius 1, so its radius-1 ball is the
    # whole space and only six member sets remain
    assert ballean_to_json(enumerate_balls(semi3)) == {
        "balls": [["a"], ["b"], ["c"], ["a", "b"], ["b", "c"], ["a", "b", "c"]]
    }


def test_one_point_ballean():
    space = space_from_pairs(("o",), {})
    ballean = enumerate_balls(space)
    assert ballean_to_json(ballean) == {"balls": [["o"]]}
    diagram = hasse_diagram(ballean)
    assert diagram.arcs == frozenset()
    assert reversed_is_rooted_tree(diagram)


def test_hasse_of_ultrametric_is_a_reversed_tree(ultra3):
    diagram = hasse_diagram(enumerate_balls(ultra3))
    assert hasse_to_json(diagram) == {
        "vertices": [["p"], ["q"], ["r"], ["q", "r"], ["p", "q", "r"]],
        "arcs": [[0, 4], [1, 3], [2, 3], [3, 4]],
    }
    assert reversed_is_rooted_tree(diagram)


def test_hasse_of_semi3_is_not_a_tree(semi3):
    diagram = hasse_diagram(enumerate_balls(semi3))
    assert len(diagram.vertices) == 6
    assert len(diagram.arcs) == 6
    assert not reversed_is_rooted_tree(diagram)
    b_index = diagram.vertices.index(frozenset({"b"}))
    assert diagram.out_degrees()[b_index] == 2


def test_zero_indegree_vertices_are_the_singletons():
    for seed in range(15):
        space = random_ultrametric(GenConfig(seed=seed, n=2 + seed % 5))
        diagram = hasse_diagram(enumerate_balls(space))
        indeg = diagram.in_degrees()
        for i, members in enumerate(diagram.vertices):
            assert (indeg[i] == 0) == (len(members) == 1)


def test_hasse_iso_cases(ultra3, ultra3_scaled, semi3):
    h1 = hasse_diagram(enumerate_balls(ultra3))
    h2 = hasse_diagram(enumerate_balls(ultra3_scaled))
    iso = hasse_digraph_iso(h1, h2)
    assert iso is not None
    assert hasse_iso_to_json(iso)["map"][0][0] == ["p"]

    renamed, _ = renamed_copy(semi3, seed=7)
    h3 = hasse_diagram(enumerate_balls(semi3))
    h4 = hasse_diagram(enumerate_balls(renamed))
    assert hasse_digraph_iso(h3, h4) is not None

    assert hasse_digraph_iso(h1, h3) is None


def test_verify_ball_preserving(ultra3, ultra3_scaled):
    ok, violation = verify_ball_preserving(
        ultra3, ultra3_scaled, {"p": "p", "q": "q", "r": "r"}
    )
    assert ok and violation is None

    witness = decide_weak_similarity(ultra3, ultra3_scaled)
    ok, _ = verify_ball_preserving(ultra3, ultra3_scaled, witness.phi)
    assert ok

    ok, violation = verify_ball_preserving(
        ultra3, ultra3_scaled, {"p": "q", "q": "p", "r": "r"}
    )
    assert not ok
    assert violation == ("image", frozenset({"q", "r"}), frozenset({"p", "r"}))


def test_verify_rejects_non_bijections(ultra3):
    with pytest.raises(NotABijectionError):
        verify_ball_preserving(ultra3, ultra3, {"p": "p", "q": "q"})
    with pytest.raises(NotABijectionError):
        verify_ball_preserving(ultra3, ultra3, {"p": "p", "q": "p", "r": "r"})
    with pytest.raises(NotABijectionError):
        verify_ball_preserving(ultra3, ultra3, {"p": "x", "q": "y", "r": "z"})


def test_ball_preserving_bijection(ultra3, ultra3_scaled, semi3):
    phi = ball_preserving_bijection(ultra3, ultra3_scaled)
    assert phi is not None
    assert verify_ball_preserving(ultra3, ultra3_scaled, phi)[0]
    # p is the lone point outside the small ball, so it is pinned
    assert phi["p"] == "p"

    assert ball_preserving_bijection(ultra3, semi3) is None

    identity_like = ball_preserving_bijection(semi3, semi3)
    assert identity_like is not None
    assert verify_ball_preserving(semi3, semi3, identity_like)[0]


def test_hasse_dot_output(ultra3):
    dot = hasse_to_dot(hasse_diagram(enumerate_balls(ultra3)))
    assert dot == (
        "digraph hasse {\n"
        '  b0 [label="{p}"];\n'
        '  b1 [label="{q}"];\n'
        '  b2 [label="{r}"];\n'
        '  b3 [label="{q,r}"];\n'
        '  b4 [label="{p,q,r}"];\n'
        "  b0 -> b4;\n"
        "  b1 -> b3;\n"
        "  b2 -> b3;\n"
        "  b3 -> b4;\n"
        "}\n"
    )


def test_ball_radii_range_over_spectrum(blocks4):
    ballean = enumerate_balls(blocks4)
    assert {b.radius for b in ballean.balls} <= {F(0), F(1), F(2), F(3)}
    assert frozenset(blocks4.points) in ballean.member_sets()
    for p in blocks4.points:
        assert frozenset({p}) in ballean.member_sets()
