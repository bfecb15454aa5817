"""Seeded instance generators and brute-force oracles.

Random ultrametric spaces are produced by sampling a random valid labeled
tree and converting it with ``space_from_tree`` -- never by rejection
sampling on matrices. Everything is driven by ``random.Random`` with a string
seed derived from the config, so identical configs give bitwise-identical
space documents. The oracles decide isometry / weak similarity /
ball-preservation by exhausting point bijections; each has a hard size guard
and stays independent of the decision procedures it cross-checks (the only
shared step is the forced spectrum scaling, which is unique anyway).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InfeasibleConstraintsError, TooLargeError
from .reptree import RepNode, RepTree, build_tree, internal, leaf, space_from_tree
from .similarity import (
    IsometryWitness,
    WeakSimWitness,
    forced_scaling,
    verify_weak_similarity,
)
from .spaces import (
    FiniteSemimetricSpace,
    rank_relabel,
    spectrum,
    validate_semimetric,
)

DEFAULT_POOL: tuple[Fraction, ...] = tuple(Fraction(k) for k in range(1, 7))

FORCE_CHOICES = (None, "R", "Rtilde", "D", "T")


@dataclass(frozen=True)
class GenConfig:
    """Deterministic generation parameters.

    ``spectrum_pool`` is the set of candidate distance values; only its
    positive members are used for labels. ``force_class`` is one of
    None/"R"/"Rtilde"/"D"/"T" (the classify report's class codes).
    """

    seed: int = 0
    n: int = 5
    spectrum_pool: tuple[Fraction, ...] = DEFAULT_POOL
    force_class: str | None = None


def _positive_pool(config: GenConfig) -> list[Fraction]:
    pool = sorted({Fraction(v) for v in config.spectrum_pool if v > 0})
    if config.n >= 2 and not pool:
        raise InfeasibleConstraintsError("need at least one positive pool value")
    return pool


class _Points:
    """Hands out p0, p1, ... in construction order."""

    def __init__(self) -> None:
        self.count = 0

    def next(self) -> RepNode:
        node = leaf(f"p{self.count}")
        self.count += 1
        return node


def _free_tree(rng: random.Random, n: int, max_rank: int, pool: list[Fraction], pts: _Points) -> RepNode:
    # rank bounds the recursion depth: children recurse with rank - 1, so a
    # node at rank 1 can only have leaf children. The label may sit anywhere
    # in pool[rank - 1:max_rank]; descendants stay strictly below pool[rank - 1].
    rank = rng.randint(1, max_rank)
    label = pool[rng.randint(rank, max_rank) - 1]
    if rank == 1:
        sizes = [1] * n
    else:
        # keep one part of size >= 2 so only rank 1 yields all-leaf stars
        k = rng.randint(2, max(2, n - 1))
        sizes = [1] * k
        for _ in range(n - k):
            sizes[rng.randrange(k)] += 1
    children = []
    for size in sizes:
        if size == 1:
            children.append(pts.next())
        else:
            children.append(_free_tree(rng, size, rank - 1, pool, pts))
    return internal(label, children)


def _chain_tree(rng: random.Random, n: int, pool: list[Fraction], pts: _Points) -> RepNode:
    # One internal node per level; every chain node keeps >= 1 leaf sibling
    # for its inner child, the bottom node holds >= 2 leaves.
    m = rng.randint(1, min(n - 1, len(pool)))
    labels = sorted(rng.sample(pool, m), reverse=True)
    counts = [1] * (m - 1) + [2]
    for _ in range(n - (m + 1)):
        counts[rng.randrange(m)] += 1
    node: RepNode | None = None
    for level in range(m - 1, -1, -1):
        kids = [pts.next() for _ in range(counts[level])]
        if node is not None:
            kids.append(node)
        node = internal(labels[level], kids)
    assert node is not None
    return node


def _binary_chain_tree(rng: random.Random, n: int, pool: list[Fraction], pts: _Points) -> RepNode:
    m = n - 1
    if m > len(pool):
        raise InfeasibleConstraintsError(
            f"a strictly binary chain with {n} leaves needs {m} distinct labels"
        )
    labels = sorted(rng.sample(pool, m), reverse=True)
    node: RepNode | None = None
    for level in range(m - 1, -1, -1):
        kids = [pts.next()]
        kids.append(node if node is not None else pts.next())
        node = internal(labels[level], kids)
    assert node is not None
    return node


def _distinct_relabel(root: RepNode, rng: random.Random, pool: list[Fraction]) -> RepNode:
    """Give every internal node a distinct pool label, decreasing with depth."""
    order: list[RepNode] = []
    level = [root]
    while level:
        order.extend(n for n in level if not n.is_leaf)
        level = [c for n in level for c in n.children]
    if len(order) > len(pool):
        raise InfeasibleConstraintsError(
            f"{len(order)} internal nodes but only {len(pool)} distinct pool labels"
        )
    fresh = dict(zip(map(id, order), sorted(rng.sample(pool, len(order)), reverse=True)))

    def rebuild(node: RepNode) -> RepNode:
        if node.is_leaf:
            return node
        return RepNode(fresh[id(node)], tuple(rebuild(c) for c in node.children), None)

    return rebuild(root)


def _uniform_fan_tree(rng: random.Random, n: int, pool: list[Fraction], pts: _Points) -> RepNode:
    """Chain of single internal nodes with equal-sized leaf fans at the end.

    Falls back to a plain chain when a two-fan layout does not fit; both
    layouts have a uniform last internal level and distinct labels.
    """
    can_fan = n >= 4 and len(pool) >= 3
    if not can_fan or rng.random() < 0.3:
        return _distinct_relabel(_chain_tree(rng, n, pool, pts), rng, pool)
    c = rng.randint(1, max(1, min(len(pool) - 2, n - 3, 4)))
    m_max = min((n - (c - 1)) // 2, len(pool) - c)
    if m_max < 2:
        return _distinct_relabel(_chain_tree(rng, n, pool, pts), rng, pool)
    m = rng.randint(2, m_max)
    s = rng.randint(2, (n - (c - 1)) // m)
    counts = [1] * (c - 1) + [0]  # leaf children per chain node
    for _ in range(n - m * s - (c - 1)):
        counts[rng.randrange(c)] += 1
    labels = sorted(rng.sample(pool, c + m), reverse=True)
    fans = [
        internal(labels[c + i], [pts.next() for _ in range(s)]) for i in range(m)
    ]
    node = internal(labels[c - 1], fans + [pts.next() for _ in range(counts[c - 1])])
    for level in range(c - 2, -1, -1):
        node = internal(labels[level], [pts.next() for _ in range(counts[level])] + [node])
    return node


def random_ultrametric(config: GenConfig) -> FiniteSemimetricSpace:
    """Random ultrametric space with ``config.n`` points named p0..p{n-1}."""
    if config.n < 1:
        raise InfeasibleConstraintsError("n must be >= 1")
    if config.force_class not in FORCE_CHOICES:
        raise InfeasibleConstraintsError(f"unknown class {config.force_class!r}")
    rng = random.Random(f"ultra:{config.seed}:{config.n}:{config.force_class}")
    if config.n == 1:
        return validate_semimetric(("p0",), ((Fraction(0),),))
    pool = _positive_pool(config)
    pts = _Points()
    if config.force_class is None:
        root = _free_tree(rng, config.n, len(pool), pool, pts)
    elif config.force_class == "Rtilde":
        root = _chain_tree(rng, config.n, pool, pts)
    elif config.force_class == "R":
        root = _binary_chain_tree(rng, config.n, pool, pts)
    elif config.force_class == "D":
        # free trees can carry more internal nodes than the pool has labels;
        # retry a few times, then fall back to a chain (always in D)
        root = None
        for _ in range(8):
            pts = _Points()
            candidate = _free_tree(rng, config.n, len(pool), pool, pts)
            try:
                root = _distinct_relabel(candidate, rng, pool)
                break
            except InfeasibleConstraintsError:
                continue
        if root is None:
            pts = _Points()
            root = _distinct_relabel(_chain_tree(rng, config.n, pool, pts), rng, pool)
    else:  # "T"
        root = _uniform_fan_tree(rng, config.n, pool, pts)
    return space_from_tree(RepTree(root))


def random_semimetric(config: GenConfig) -> FiniteSemimetricSpace:
    """Random semimetric space: off-diagonal entries drawn from the pool."""
    if config.n < 1:
        raise InfeasibleConstraintsError("n must be >= 1")
    rng = random.Random(f"semi:{config.seed}:{config.n}")
    n = config.n
    pool = _positive_pool(config)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice(pool)
            rows[i][j] = rows[j][i] = v
    return validate_semimetric(
        tuple(f"p{i}" for i in range(n)), tuple(tuple(r) for r in rows)
    )


def random_relabeled(
    space: FiniteSemimetricSpace, seed: int, distinct: bool = False
) -> FiniteSemimetricSpace:
    """Same tree shape and points as ``space``, fresh random valid labels.

    Labels are rescaled top-down (each child label a random proper fraction
    of its parent's), so the unlabeled tree shape is preserved exactly. With
    ``distinct=True`` the new labeling is injective.
    """
    tree = build_tree(space)
    rng = random.Random(f"relabel:{seed}")
    used: set[Fraction] = set()

    def pick(upper: Fraction | None) -> Fraction:
        if upper is None:
            value = Fraction(rng.randint(40, 400))
        else:
            value = upper * Fraction(rng.randint(1, 9), 10)
        while distinct and value in used:
            value = (value + (upper if upper is not None else value * 2)) / 2
        used.add(value)
        return value

    def rebuild(node: RepNode, upper: Fraction | None) -> RepNode:
        if node.is_leaf:
            return node
        label = pick(upper)
        return RepNode(label, tuple(rebuild(c, label) for c in node.children), None)

    return space_from_tree(RepTree(rebuild(tree.root, None)))


def renamed_copy(
    space: FiniteSemimetricSpace, seed: int, prefix: str = "q"
) -> tuple[FiniteSemimetricSpace, dict[str, str]]:
    """Isometric copy with shuffled point order and fresh names.

    Returns the copy plus the renaming map (old name -> new name).
    """
    rng = random.Random(f"rename:{seed}")
    order = list(range(len(space)))
    rng.shuffle(order)
    names = {space.points[pi]: f"{prefix}{i}" for i, pi in enumerate(order)}
    pts = tuple(f"{prefix}{i}" for i in range(len(space)))
    rows = tuple(
        tuple(space.dist[order[i]][order[j]] for j in range(len(space)))
        for i in range(len(space))
    )
    return validate_semimetric(pts, rows), names


def oracle_isometry(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace
) -> IsometryWitness | None:
    """Exhaustive isometry search over all point bijections (n <= 8)."""
    if len(x) != len(y):
        return None
    if len(x) > 8:
        raise TooLargeError(f"oracle_isometry guard: n = {len(x)} > 8")
    n = len(x)
    for perm in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if x.dist[i][j] != y.dist[perm[i]][perm[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return IsometryWitness(
                {x.points[i]: y.points[perm[i]] for i in range(n)}
            )
    return None


def oracle_weak_similarity(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace
) -> WeakSimWitness | None:
    """Exhaustive weak-similarity search (n <= 8).

    The spectrum scaling is unique when it exists, so exhausting point
    bijections of the rank-relabeled space settles the question.
    """
    scaling = forced_scaling(x, y)
    if scaling is None:
        return None
    relabeled = rank_relabel(x, [b for _, b in scaling])
    iso = oracle_isometry(relabeled, y)
    if iso is None:
        return None
    witness = WeakSimWitness(scaling, iso.phi)
    assert verify_weak_similarity(x, y, witness)
    return witness


def oracle_ball_preserving(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace
) -> dict[str, str] | None:
    """Exhaustive search for a ball-preserving bijection (n <= 6)."""
    from .balls import verify_ball_preserving

    if len(x) != len(y):
        return None
    if len(x) > 6:
        raise TooLargeError(f"oracle_ball_preserving guard: n = {len(x)} > 6")
    for perm in itertools.permutations(y.points):
        mapping = dict(zip(x.points, perm))
        ok, _ = verify_ball_preserving(x, y, mapping)
        if ok:
            return mapping
    return None
