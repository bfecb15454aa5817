"""Representing trees of finite ultrametric spaces.

A representing tree is a rooted tree whose leaves carry the points and whose
internal nodes carry positive rational labels that strictly decrease from
parent to child. ``build_tree`` constructs it recursively: the root is labeled
with the diameter and its children are the parts of the diametrical graph's
multipartite decomposition (one-point parts become leaves labeled 0). The
distance between two points equals the label of their lowest common ancestor,
which for strictly decreasing labels is also the maximum label on the
connecting path; ``tree_distance`` computes the former and asserts the latter.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import FormatError, InvalidTreeError, NotUltrametricError, UnknownPointError
from .spaces import (
    FiniteSemimetricSpace,
    diameter,
    format_rational,
    parse_rational,
    ultrametric_violation,
    validate_semimetric,
)


@dataclass(frozen=True)
class RepNode:
    """Tree node: internal nodes have a label and children, leaves a point.

    ``label`` is None on shape-only trees produced by ``strip_labels`` or read
    from unlabeled documents.
    """

    label: Fraction | None
    children: tuple["RepNode", ...] = ()
    point: str | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


def leaf(point: str) -> RepNode:
    return RepNode(Fraction(0), (), point)


def internal(label: object, children: tuple[RepNode, ...] | list[RepNode]) -> RepNode:
    lbl = label if isinstance(label, Fraction) else Fraction(label)  # type: ignore[arg-type]
    return RepNode(lbl, tuple(children), None)


@dataclass(frozen=True)
class RepTree:
    root: RepNode

    def nodes(self) -> Iterator[RepNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> tuple[RepNode, ...]:
        return tuple(n for n in self.nodes() if n.is_leaf)

    def leaf_points(self) -> tuple[str, ...]:
        return tuple(n.point for n in self.leaves())  # type: ignore[misc]


def validate_tree(tree: RepTree, labeled: bool = True) -> None:
    """Raise InvalidTreeError unless the tree satisfies the node invariants.

    Structural invariants always hold: leaves carry a point, internal nodes
    have >= 2 children and no point, and leaf points are pairwise distinct.
    With ``labeled=True`` the label invariants are enforced too: leaves are
    labeled 0 and internal labels are positive and strictly larger than every
    child label.
    """
    points: set[str] = set()

    def walk(node: RepNode) -> None:
        if node.is_leaf:
            if node.point is None:
                raise InvalidTreeError("leaf without a point")
            if node.point in points:
                raise InvalidTreeError(f"duplicate leaf point {node.point!r}")
            points.add(node.point)
            if labeled and node.label != 0:
                raise InvalidTreeError(f"leaf {node.point!r} must be labeled 0")
            return
        if node.point is not None:
            raise InvalidTreeError("internal node carrying a point")
        if len(node.children) < 2:
            raise InvalidTreeError("internal node with fewer than 2 children")
        if labeled:
            if node.label is None:
                raise InvalidTreeError("internal node without a label")
            if node.label <= 0:
                raise InvalidTreeError("internal label must be positive")
            for child in node.children:
                if child.label is None:
                    raise InvalidTreeError("internal node without a label")
                if child.label >= node.label:
                    raise InvalidTreeError(
                        "child label must be strictly smaller than parent label"
                    )
        for child in node.children:
            walk(child)

    walk(tree.root)


@lru_cache(maxsize=None)
def build_tree(space: FiniteSemimetricSpace) -> RepTree:
    """Representing tree of an ultrametric space (NotUltrametricError otherwise).

    Children are ordered by the labeled canonical code of their subtree (ties
    broken by leaf point names), so equal spaces yield identical trees.
    """
    violation = ultrametric_violation(space)
    if violation is not None:
        raise NotUltrametricError(violation)
    from .treecanon import _node_code  # local import: treecanon works on RepNode

    def build(sub: FiniteSemimetricSpace) -> RepNode:
        if len(sub) == 1:
            return leaf(sub.points[0])
        from .diametrical import diametrical_graph, multipartite_parts

        parts = multipartite_parts(diametrical_graph(sub)).parts
        children = []
        for part in parts:
            if len(part) == 1:
                children.append(leaf(part[0]))
            else:
                children.append(build(sub.restrict(part)))
        children.sort(key=lambda c: (_node_code(c, True), _sorted_leaf_points(c)))
        return RepNode(diameter(sub), tuple(children))

    return RepTree(build(space))


def _sorted_leaf_points(node: RepNode) -> tuple[str, ...]:
    if node.is_leaf:
        return (node.point,)  # type: ignore[return-value]
    out: list[str] = []
    for child in node.children:
        out.extend(_sorted_leaf_points(child))
    return tuple(sorted(out))


def _paths_to_leaves(tree: RepTree) -> dict[str, tuple[RepNode, ...]]:
    paths: dict[str, tuple[RepNode, ...]] = {}

    def walk(node: RepNode, trail: tuple[RepNode, ...]) -> None:
        trail = trail + (node,)
        if node.is_leaf:
            paths[node.point] = trail  # type: ignore[index]
        for child in node.children:
            walk(child, trail)

    walk(tree.root, ())
    return paths


def tree_distance(tree: RepTree, x: str, y: str) -> Fraction:
    """Label of the lowest common ancestor of the two leaves (0 if x == y)."""
    paths = _paths_to_leaves(tree)
    for name in (x, y):
        if name not in paths:
            raise UnknownPointError(name)
    if x == y:
        return Fraction(0)
    px, py = paths[x], paths[y]
    shared = 0
    while shared < min(len(px), len(py)) and px[shared] is py[shared]:
        shared += 1
    lca = px[shared - 1]
    assert lca.label is not None
    # Strictly decreasing labels make the LCA label the maximum over the
    # connecting path (LCA and everything below it on both sides).
    between = list(px[shared - 1 :]) + list(py[shared:])
    assert lca.label == max(n.label for n in between if not n.is_leaf)
    return lca.label


def space_from_tree(tree: RepTree) -> FiniteSemimetricSpace:
    """Ultrametric space realized by a fully labeled valid tree.

    Points appear in leaf order (depth-first). ``space_from_tree(build_tree(X))``
    reproduces X's distances exactly.
    """
    validate_tree(tree, labeled=True)
    leaves = tree.leaves()
    points = tuple(n.point for n in leaves)  # type: ignore[misc]
    index = {p: i for i, p in enumerate(points)}
    n = len(points)
    rows = [[Fraction(0)] * n for _ in range(n)]

    def fill(node: RepNode) -> list[int]:
        if node.is_leaf:
            return [index[node.point]]  # type: ignore[index]
        groups = [fill(c) for c in node.children]
        for gi in range(len(groups)):
            for gj in range(gi + 1, len(groups)):
                for a in groups[gi]:
                    for b in groups[gj]:
                        rows[a][b] = node.label  # type: ignore[assignment]
                        rows[b][a] = node.label  # type: ignore[assignment]
        return [i for g in groups for i in g]

    fill(tree.root)
    return validate_semimetric(points, tuple(tuple(r) for r in rows))


def strip_labels(tree: RepTree) -> RepTree:
    """Same shape and leaf points, every label erased (None)."""

    def strip(node: RepNode) -> RepNode:
        return RepNode(None, tuple(strip(c) for c in node.children), node.point)

    return RepTree(strip(tree.root))


# --- JSON / DOT wire formats -------------------------------------------------
#
# internal node: {"label": "2", "children": [...]} (label optional on shape
# documents); leaf: {"point": "p"}.


def tree_to_json(tree: RepTree) -> dict:
    def enc(node: RepNode) -> dict:
        if node.is_leaf:
            return {"point": node.point}
        doc: dict = {}
        if node.label is not None:
            doc["label"] = format_rational(node.label)
        doc["children"] = [enc(c) for c in node.children]
        return doc

    return enc(tree.root)


def tree_from_json(doc: object) -> RepTree:
    def dec(obj: object) -> RepNode:
        if not isinstance(obj, dict):
            raise FormatError("tree node must be a JSON object")
        if "point" in obj:
            if "children" in obj or "label" in obj:
                raise FormatError("leaf nodes carry only a point")
            if not isinstance(obj["point"], str):
                raise FormatError("leaf point must be a string")
            return leaf(obj["point"])
        if "children" not in obj:
            raise FormatError('tree node needs "children" or "point"')
        kids = obj["children"]
        if not isinstance(kids, list) or not kids:
            raise FormatError('"children" must be a non-empty list')
        label = parse_rational(obj["label"]) if "label" in obj else None
        return RepNode(label, tuple(dec(k) for k in kids), None)

    tree = RepTree(dec(doc))
    validate_tree(tree, labeled=False)
    return tree


def tree_to_text(tree: RepTree) -> str:
    return json.dumps(tree_to_json(tree), indent=2) + "\n"


def tree_from_text(text: str) -> RepTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return tree_from_json(doc)


def tree_to_dot(tree: RepTree) -> str:
    """Internal nodes show their label, leaves their point name (box shape)."""
    lines = ["digraph tree {"]
    counter = 0
    edges: list[tuple[int, int]] = []

    def walk(node: RepNode) -> int:
        nonlocal counter
        my_id = counter
        counter += 1
        if node.is_leaf:
            lines.append(f'  n{my_id} [label="{node.point}", shape=box];')
        else:
            text = "" if node.label is None else format_rational(node.label)
            lines.append(f'  n{my_id} [label="{text}"];')
        for child in node.children:
            edges.append((my_id, walk(child)))
        return my_id

    walk(tree.root)
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
