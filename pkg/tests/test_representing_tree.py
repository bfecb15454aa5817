from fractions import Fraction as F

import pytest

from umtk import (
    GenConfig,
    build_tree,
    random_ultrametric,
    space_from_pairs,
    space_from_tree,
    spectrum,
    strip_labels,
    tree_distance,
    tree_from_json,
    tree_to_json,
    validate_tree,
)
from umtk.errors import (
    FormatError,
    InvalidTreeError,
    NotUltrametricError,
    UnknownPointError,
)
from umtk.reptree import RepTree, internal, leaf, tree_to_dot


def test_tree_of_ultra3(ultra3):
    assert tree_to_json(build_tree(ultra3)) == {
        "label": "2",
        "children": [
            {"point": "p"},
            {"label": "1", "children": [{"point": "q"}, {"point": "r"}]},
        ],
    }


def test_tree_of_one_point_space():
    space = space_from_pairs(("x",), {})
    tree = build_tree(space)
    assert tree.root.is_leaf and tree.root.point == "x"
    assert tree.root.label == 0
    assert space_from_tree(tree) == space


def test_tree_of_blocks4(blocks4):
    doc = tree_to_json(build_tree(blocks4))
    assert doc["label"] == "3"
    assert [child["label"] for child in doc["children"]] == ["1", "2"]
    assert doc["children"][0]["children"] == [{"point": "a"}, {"point": "b"}]


def test_tree_distance(ultra3, blocks4):
    t3 = build_tree(ultra3)
    assert tree_distance(t3, "q", "r") == F(1)
    assert tree_distance(t3, "p", "p") == F(0)
    assert tree_distance(build_tree(blocks4), "a", "c") == F(3)
    with pytest.raises(UnknownPointError):
        tree_distance(t3, "q", "missing")


def test_round_trip_identical_matrix(ultra3):
    assert space_from_tree(build_tree(ultra3)) == ultra3


def test_space_from_hand_built_tree():
    tree = RepTree(internal(F(5), [leaf("u"), leaf("v")]))
    space = space_from_tree(tree)
    assert space.points == ("u", "v")
    assert space.distance("u", "v") == F(5)


def test_non_ultrametric_rejected(semi3):
    with pytest.raises(NotUltrametricError) as info:
        build_tree(semi3)
    assert info.value.violation == ("a", "c", "b")


def test_strip_labels(ultra3):
    bare = strip_labels(build_tree(ultra3))
    assert all(node.label is None for node in bare.nodes())
    assert sorted(bare.leaf_points()) == ["p", "q", "r"]
    validate_tree(bare, labeled=False)
    with pytest.raises(InvalidTreeError):
        validate_tree(bare, labeled=True)


def test_tree_validation_rejects_bad_shapes():
    with pytest.raises(InvalidTreeError):  # internal node with a single child
        validate_tree(RepTree(internal(F(2), [leaf("u")])))
    with pytest.raises(InvalidTreeError):  # labels must strictly decrease
        validate_tree(
            RepTree(internal(F(1), [leaf("u"), internal(F(1), [leaf("v"), leaf("w")])]))
        )
    with pytest.raises(InvalidTreeError):  # duplicate leaf point
        validate_tree(RepTree(internal(F(2), [leaf("u"), leaf("u")])))


def test_internal_labels_cover_spectrum(blocks4):
    labels = sorted(
        node.label for node in build_tree(blocks4).nodes() if not node.is_leaf
    )
    assert labels == [F(1), F(2), F(3)]
    assert set(labels) == set(spectrum(blocks4)) - {F(0)}


def test_tree_json_round_trip(blocks4):
    tree = build_tree(blocks4)
    assert tree_to_json(tree_from_json(tree_to_json(tree))) == tree_to_json(tree)


def test_unlabeled_tree_document_is_accepted():
    doc = {"children": [{"point": "u"}, {"point": "v"}]}
    tree = tree_from_json(doc)
    assert tree.root.label is None
    assert tree_to_json(tree) == doc


@pytest.mark.parametrize(
    "doc",
    [
        42,
        {},
        {"point": 3},
        {"label": "2"},  # internal node without children
        {"label": "2", "children": []},
        {"point": "u", "children": [{"point": "v"}]},
        {"label": "1.5", "children": [{"point": "u"}, {"point": "v"}]},
    ],
)
def test_bad_tree_documents(doc):
    with pytest.raises((FormatError, InvalidTreeError)):
        tree_from_json(doc)


def test_tree_dot_output(ultra3):
    dot = tree_to_dot(build_tree(ultra3))
    assert dot.startswith("digraph tree {")
    assert 'label="p"' in dot and "shape=box" in dot
    assert 'label="2"' in dot


def test_random_round_trips():
    for seed in range(25):
        space = random_ultrametric(GenConfig(seed=seed, n=1 + seed % 9))
        back = space_from_tree(build_tree(space))
        assert back.restrict(space.points) == space
