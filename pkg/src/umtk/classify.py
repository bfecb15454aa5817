"""Shape classes of representing trees and the constructions they license.

Level convention: the root sits at level 0 and "the last level" is the
maximal leaf depth n. Four predicates are reported:

- inner_chain: every level holds at most one internal node (the internal
  nodes then form a single root chain);
- binary_chain: inner_chain and every internal node has exactly two children;
- distinct_labels: the internal labels are pairwise distinct;
- uniform_last_level: levels k < n-1 hold exactly one internal node each and
  all internal nodes at level n-1 have the same number of children.

``binary_chain`` implies ``inner_chain`` implies ``distinct_labels`` (labels
strictly decrease along the chain); no other implication is assumed.

For spaces whose *unlabeled* tree shapes already match, two constructions
upgrade the shape isomorphism to a weak similarity: the chain construction
(valid whenever X is an inner chain) and the label-rank construction (valid
when both spaces have distinct labels and uniform last levels). Conversely,
``adversarial_relabeling`` shows the chain hypothesis is sharp: for any X
that is not an inner chain it produces a space with the same tree shape but
a different spectrum size, hence not weakly similar to X.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InapplicableError, VerificationFailedError
from .reptree import RepNode, RepTree, build_tree, space_from_tree
from .similarity import WeakSimWitness, forced_scaling, verify_weak_similarity
from .spaces import FiniteSemimetricSpace, format_rational, spectrum
from .treecanon import canon_code_unlabeled

CLASS_CODES = ("R", "Rtilde", "D", "T")


@dataclass(frozen=True)
class ClassReport:
    binary_chain: bool
    inner_chain: bool
    distinct_labels: bool
    uniform_last_level: bool
    inner_per_level: tuple[int, ...]
    internal_labels: tuple[Fraction, ...]

    def codes(self) -> tuple[str, ...]:
        """Short class codes, matching the generator's --class flag values."""
        flags = {
            "R": self.binary_chain,
            "Rtilde": self.inner_chain,
            "D": self.distinct_labels,
            "T": self.uniform_last_level,
        }
        return tuple(code for code in CLASS_CODES if flags[code])

    def to_json(self) -> dict:
        return {
            "binary_chain": self.binary_chain,
            "inner_chain": self.inner_chain,
            "distinct_labels": self.distinct_labels,
            "uniform_last_level": self.uniform_last_level,
            "inner_per_level": list(self.inner_per_level),
            "internal_labels": [format_rational(v) for v in self.internal_labels],
            "classes": list(self.codes()),
        }


def _levels(tree: RepTree) -> list[list[RepNode]]:
    levels: list[list[RepNode]] = []
    current = [tree.root]
    while current:
        levels.append(current)
        current = [c for node in current for c in node.children]
    return levels


def classify_space(space: FiniteSemimetricSpace) -> ClassReport:
    """Class membership report for an ultrametric space (via its tree)."""
    tree = build_tree(space)
    levels = _levels(tree)
    inner = [[n for n in level if not n.is_leaf] for level in levels]
    counts = tuple(len(group) for group in inner)
    labels = sorted(n.label for group in inner for n in group)  # type: ignore[type-var]
    depth = len(levels) - 1

    inner_chain = all(c <= 1 for c in counts)
    binary_chain = inner_chain and all(
        len(n.children) == 2 for group in inner for n in group
    )
    distinct = len(set(labels)) == len(labels)
    if depth == 0:
        uniform = True
    else:
        chain_above = all(counts[k] == 1 for k in range(depth - 1))
        fan_sizes = {len(n.children) for n in inner[depth - 1]}
        uniform = chain_above and len(fan_sizes) <= 1
    return ClassReport(binary_chain, inner_chain, distinct, uniform, counts, tuple(labels))


class ShapeWitnessOutcome(enum.Enum):
    """Non-witness results of ``witness_from_unlabeled_iso``."""

    NOT_ISOMORPHIC_SHAPES = "not-isomorphic-shapes"
    INAPPLICABLE = "inapplicable"


NOT_ISOMORPHIC_SHAPES = ShapeWitnessOutcome.NOT_ISOMORPHIC_SHAPES
INAPPLICABLE = ShapeWitnessOutcome.INAPPLICABLE


def _rank_aligned_pairing(
    tx: RepTree, ty: RepTree
) -> tuple[dict[str, str], list[tuple[Fraction, Fraction]]]:
    """Pair the two trees top-down, aligning internal siblings by label rank.

    Leaf siblings are paired in point-name order; internal siblings in
    decreasing label order. Returns the induced leaf map and the collected
    (label, label) pairs. Requires matching child profiles at every step,
    which holds for isomorphic shapes in the classes handled here.
    """
    phi: dict[str, str] = {}
    scale_pairs: list[tuple[Fraction, Fraction]] = []

    def pair(a: RepNode, b: RepNode) -> None:
        if a.is_leaf != b.is_leaf:
            raise VerificationFailedError("shape pairing mismatch: leaf vs internal")
        if a.is_leaf:
            phi[a.point] = b.point  # type: ignore[index]
            return
        assert a.label is not None and b.label is not None
        scale_pairs.append((a.label, b.label))
        a_leaves = sorted((c for c in a.children if c.is_leaf), key=lambda c: c.point)  # type: ignore[arg-type, return-value]
        b_leaves = sorted((c for c in b.children if c.is_leaf), key=lambda c: c.point)  # type: ignore[arg-type, return-value]
        a_inner = sorted((c for c in a.children if not c.is_leaf), key=lambda c: c.label, reverse=True)  # type: ignore[arg-type, return-value]
        b_inner = sorted((c for c in b.children if not c.is_leaf), key=lambda c: c.label, reverse=True)  # type: ignore[arg-type, return-value]
        if len(a_leaves) != len(b_leaves) or len(a_inner) != len(b_inner):
            raise VerificationFailedError("shape pairing mismatch: child profiles differ")
        for ca, cb in zip(a_leaves, b_leaves):
            phi[ca.point] = cb.point  # type: ignore[index]
        for ca, cb in zip(a_inner, b_inner):
            pair(ca, cb)

    pair(tx.root, ty.root)
    return phi, scale_pairs


def witness_from_unlabeled_iso(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace
) -> WeakSimWitness | ShapeWitnessOutcome:
    """Build a weak similarity from an unlabeled tree-shape isomorphism.

    Returns NOT_ISOMORPHIC_SHAPES when the shapes differ. When X is an inner
    chain, any shape isomorphism works: pair the chains level by level and
    send the i-th largest label of X to the i-th largest of Y. When both
    spaces have distinct labels and uniform last levels, the same label-rank
    pairing extends to the sibling fans at the last internal level. Outside
    those hypotheses returns INAPPLICABLE. Produced witnesses are verified.
    """
    tx, ty = build_tree(x), build_tree(y)
    if canon_code_unlabeled(tx) != canon_code_unlabeled(ty):
        return NOT_ISOMORPHIC_SHAPES
    cx = classify_space(x)
    cy = classify_space(y)
    applicable = cx.inner_chain or (
        cx.distinct_labels
        and cx.uniform_last_level
        and cy.distinct_labels
        and cy.uniform_last_level
    )
    if not applicable:
        return INAPPLICABLE
    phi, pairs = _rank_aligned_pairing(tx, ty)
    scaling_map = {Fraction(0): Fraction(0)}
    for a, b in pairs:
        scaling_map[a] = b
    scaling = tuple(sorted(scaling_map.items()))
    witness = WeakSimWitness(scaling, phi)
    if not verify_weak_similarity(x, y, witness):
        raise VerificationFailedError("shape-derived witness failed re-check")
    return witness


def _node_records(tree: RepTree):
    """(path, node, level, parent_label) for every internal node, DFS order."""
    records: list[tuple[tuple[int, ...], RepNode, int, Fraction | None]] = []

    def walk(node: RepNode, path: tuple[int, ...], level: int, parent: Fraction | None) -> None:
        if node.is_leaf:
            return
        records.append((path, node, level, parent))
        for i, child in enumerate(node.children):
            walk(child, path + (i,), level + 1, node.label)

    walk(tree.root, (), 0, None)
    return records


def _replace_label(tree: RepTree, path: tuple[int, ...], new_label: Fraction) -> RepTree:
    def rebuild(node: RepNode, remaining: tuple[int, ...]) -> RepNode:
        if not remaining:
            return RepNode(new_label, node.children, node.point)
        i = remaining[0]
        kids = tuple(
            rebuild(c, remaining[1:]) if j == i else c for j, c in enumerate(node.children)
        )
        return RepNode(node.label, kids, node.point)

    return RepTree(rebuild(tree.root, path))


def _fresh_between(lo: Fraction, hi: Fraction, avoid: set[Fraction]) -> Fraction:
    """Midpoint of (lo, hi), bisected toward hi until it avoids the given set."""
    value = (lo + hi) / 2
    while value in avoid:
        value = (value + hi) / 2
    return value


def _band(node: RepNode, parent_label: Fraction) -> tuple[Fraction, Fraction]:
    # Any replacement label must stay strictly between the largest child
    # label and the parent label.
    lo = max(c.label for c in node.children)  # type: ignore[type-var]
    return lo, parent_label


def adversarial_relabeling(x: FiniteSemimetricSpace) -> FiniteSemimetricSpace:
    """Same tree shape as X, different spectrum size; hence not weakly similar.

    Requires X not to be an inner chain (some level holds two internal
    nodes); otherwise raises InapplicableError. Exactly one internal label is
    rewritten, chosen deterministically:

      A. a same-level internal pair (x1, x2) with distinct labels where
         x2's label is unique overall and x1's label fits strictly between
         x2's largest child label and its parent label -> copy it (|Sp| - 1);
      B. a same-level internal pair with equal labels -> fresh midpoint value
         in x2's band (|Sp| + 1);
      C. any non-root internal node whose label occurs twice anywhere ->
         fresh midpoint value in its band (|Sp| + 1).

    One of the three always applies: with all labels distinct, the two
    branch-head siblings under the lowest common ancestor of any same-level
    internal pair satisfy A; with a repeated label, the root label never
    repeats (strict decrease), so C has a candidate.
    """
    tree = build_tree(x)
    records = _node_records(tree)
    by_level: dict[int, list] = {}
    for rec in records:
        by_level.setdefault(rec[2], []).append(rec)
    if all(len(group) <= 1 for group in by_level.values()):
        raise InapplicableError("every level has at most one internal node")

    labels = [rec[1].label for rec in records]
    counts = Counter(labels)
    label_set = set(labels)

    def finish(path: tuple[int, ...], new_label: Fraction) -> FiniteSemimetricSpace:
        relabeled = _replace_label(tree, path, new_label)
        y = space_from_tree(relabeled)
        assert canon_code_unlabeled(build_tree(y)) == canon_code_unlabeled(tree)
        assert len(spectrum(y)) != len(spectrum(x))
        return y

    multi_levels = sorted(lvl for lvl, group in by_level.items() if len(group) >= 2)
    for level in multi_levels:
        group = by_level[level]
        # pair order prefers copying an earlier sibling's label onto a later
        # node, so e.g. labels (1, 2) collapse to (1, 1) rather than (2, 2)
        for _, node1, _, _ in group:
            for path2, node2, _, parent2 in group:
                v1, v2 = node1.label, node2.label
                if v1 == v2 or counts[v2] != 1:
                    continue
                lo, hi = _band(node2, parent2)
                if lo < v1 < hi:
                    return finish(path2, v1)
    for level in multi_levels:
        group = by_level[level]
        for i, (path2, node2, _, parent2) in enumerate(group):
            for _, node1, _, _ in group[:i] + group[i + 1 :]:
                if node1.label != node2.label:
                    continue
                lo, hi = _band(node2, parent2)
                return finish(path2, _fresh_between(lo, hi, label_set))
    for path2, node2, _, parent2 in records:
        if parent2 is None or counts[node2.label] < 2:
            continue
        lo, hi = _band(node2, parent2)
        return finish(path2, _fresh_between(lo, hi, label_set))
    raise VerificationFailedError("no admissible relabeling found")
