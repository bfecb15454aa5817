"""Balls, balleans, Hasse diagrams of inclusion, and ball-preserving maps.

A ball B_r(t) is {x : d(x, t) <= r}. Radii range over the spectrum only: as r
grows, the member set changes exactly at spectrum values, so this enumerates
every ball. Balls are identified by member set; the recorded (center, radius)
witness never participates in equality. The Hasse diagram has an arc for each
cover pair of the inclusion order (arcs point small -> large). Deciding
whether two balleans are order-isomorphic is a digraph isomorphism problem;
for ball structures of ultrametric spaces the reversed diagram is a rooted
tree and tree canonization decides it, otherwise an invariant-refinement
backtracking search runs. A Hasse isomorphism restricted to the zero-indegree
vertices (the one-point balls) always yields a ball-preserving point
bijection, which is re-verified before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotABijectionError, NotIsomorphicError, VerificationFailedError
from .reptree import RepNode, RepTree
from .spaces import FiniteSemimetricSpace, spectrum
from .treecanon import canon_code_unlabeled, rooted_tree_iso_map


@dataclass(frozen=True, eq=False)
class Ball:
    members: frozenset[str]
    center: str
    radius: Fraction

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)


def _set_key(members: frozenset[str]) -> tuple[int, tuple[str, ...]]:
    return (len(members), tuple(sorted(members)))


@dataclass(frozen=True)
class Ballean:
    """All distinct balls of a space, sorted by (size, member names)."""

    balls: tuple[Ball, ...]

    def member_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(b.members for b in self.balls)


@lru_cache(maxsize=None)
def enumerate_balls(space: FiniteSemimetricSpace) -> Ballean:
    """Every ball of the space, deduplicated by member set.

    Always contains all singletons (r = 0) and the whole space (r = diam).
    """
    found: dict[frozenset[str], Ball] = {}
    pts = space.points
    for ti, t in enumerate(pts):
        row = space.dist[ti]
        for r in spectrum(space):
            members = frozenset(pts[i] for i in range(len(pts)) if row[i] <= r)
            if members not in found:
                found[members] = Ball(members, t, r)
    ordered = sorted(found.values(), key=lambda b: _set_key(b.members))
    return Ballean(tuple(ordered))


@dataclass(frozen=True)
class HasseDiagram:
    """Cover digraph of the inclusion order; arcs are vertex-index pairs."""

    vertices: tuple[frozenset[str], ...]
    arcs: frozenset[tuple[int, int]]

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def out_degrees(self) -> list[int]:
        degs = [0] * len(self.vertices)
        for a, _ in self.arcs:
            degs[a] += 1
        return degs

    def in_degrees(self) -> list[int]:
        degs = [0] * len(self.vertices)
        for _, b in self.arcs:
            degs[b] += 1
        return degs


def hasse_diagram(ballean: Ballean) -> HasseDiagram:
    """Cover pairs B1 < B2 with no ball strictly between (triple scan)."""
    sets = tuple(b.members for b in ballean.balls)
    n = len(sets)
    arcs = set()
    for i in range(n):
        for j in range(n):
            if i == j or not sets[i] < sets[j]:
                continue
            if any(k != i and k != j and sets[i] < sets[k] < sets[j] for k in range(n)):
                continue
            arcs.add((i, j))
    return HasseDiagram(sets, frozenset(arcs))


def reversed_is_rooted_tree(diagram: HasseDiagram) -> bool:
    """True iff the arcs reversed (large -> small) form a rooted tree.

    Equivalent: exactly one vertex has no cover (the whole space) and every
    other vertex has exactly one. Cover relations are acyclic, so no extra
    cycle check is needed.
    """
    degs = diagram.out_degrees()
    roots = degs.count(0)
    return roots == 1 and all(d in (0, 1) for d in degs)


def _shape_tree(diagram: HasseDiagram) -> tuple[RepTree, dict[RepNode, frozenset[str]]]:
    """Unlabeled tree view of a reversed-tree diagram, leaves = singletons."""
    children_of: dict[int, list[int]] = {i: [] for i in range(len(diagram.vertices))}
    root = None
    degs = diagram.out_degrees()
    for a, b in diagram.arcs:
        children_of[b].append(a)
    for i, d in enumerate(degs):
        if d == 0:
            root = i
    assert root is not None
    node_to_set: dict[RepNode, frozenset[str]] = {}

    def build(i: int) -> RepNode:
        members = diagram.vertices[i]
        kids = children_of[i]
        if not kids:
            assert len(members) == 1
            node = RepNode(None, (), next(iter(members)))
        else:
            node = RepNode(None, tuple(build(k) for k in sorted(kids)), None)
        node_to_set[node] = members
        return node

    return RepTree(build(root)), node_to_set


def _joint_refine(h1: HasseDiagram, h2: HasseDiagram) -> tuple[list[int], list[int]] | None:
    """Color vertices of both diagrams together by iterated neighborhood
    refinement; returns None early if the color histograms diverge."""

    def neighbors(h: HasseDiagram) -> tuple[list[list[int]], list[list[int]]]:
        preds: list[list[int]] = [[] for _ in h.vertices]
        succs: list[list[int]] = [[] for _ in h.vertices]
        for a, b in h.arcs:
            succs[a].append(b)
            preds[b].append(a)
        return preds, succs

    def heights(h: HasseDiagram, preds: list[list[int]]) -> list[int]:
        # longest path from a minimal vertex; vertices sorted by size are
        # already topological for inclusion.
        order = sorted(range(len(h.vertices)), key=lambda i: len(h.vertices[i]))
        height = [0] * len(h.vertices)
        for v in order:
            for p in preds[v]:
                height[v] = max(height[v], height[p] + 1)
        return height

    p1, s1 = neighbors(h1)
    p2, s2 = neighbors(h2)
    hts1 = heights(h1, p1)
    hts2 = heights(h2, p2)
    colors1: list = [(len(p1[i]), len(s1[i]), hts1[i]) for i in range(len(h1.vertices))]
    colors2: list = [(len(p2[i]), len(s2[i]), hts2[i]) for i in range(len(h2.vertices))]
    if sorted(colors1) != sorted(colors2):
        return None

    while True:
        # A round keys every vertex by (own color, pred colors, succ colors)
        # and renames keys to small ints jointly across both diagrams, so the
        # ints stay comparable. Refinement only ever splits classes.
        palette: dict[object, int] = {}

        def norm(key: object) -> int:
            if key not in palette:
                palette[key] = len(palette)
            return palette[key]

        new1 = [
            norm(
                (
                    colors1[i],
                    tuple(sorted(colors1[j] for j in p1[i])),
                    tuple(sorted(colors1[j] for j in s1[i])),
                )
            )
            for i in range(len(colors1))
        ]
        new2 = [
            norm(
                (
                    colors2[i],
                    tuple(sorted(colors2[j] for j in p2[i])),
                    tuple(sorted(colors2[j] for j in s2[i])),
                )
            )
            for i in range(len(colors2))
        ]
        if sorted(new1) != sorted(new2):
            return None
        if len(set(new1) | set(new2)) == len(set(colors1) | set(colors2)):
            return new1, new2
        colors1, colors2 = new1, new2


def hasse_digraph_iso(
    h1: HasseDiagram, h2: HasseDiagram
) -> dict[frozenset[str], frozenset[str]] | None:
    """Arc-preserving vertex bijection between Hasse diagrams, or None.

    Reversed-tree diagrams (the ultrametric case) are decided through rooted
    tree canonization; general diagrams through color refinement plus
    backtracking within color classes. The returned map is verified over all
    vertex pairs before being returned.
    """
    if len(h1.vertices) != len(h2.vertices) or len(h1.arcs) != len(h2.arcs):
        return None
    t1, t2 = reversed_is_rooted_tree(h1), reversed_is_rooted_tree(h2)
    if t1 != t2:
        return None
    if t1:
        shape1, map1 = _shape_tree(h1)
        shape2, map2 = _shape_tree(h2)
        if canon_code_unlabeled(shape1) != canon_code_unlabeled(shape2):
            return None
        try:
            psi = rooted_tree_iso_map(shape1, shape2, respect_labels=False)
        except NotIsomorphicError:  # pragma: no cover - codes already matched
            return None
        return {map1[a]: map2[b] for a, b in psi.items()}

    refined = _joint_refine(h1, h2)
    if refined is None:
        return None
    colors1, colors2 = refined
    n = len(h1.vertices)
    arcs1, arcs2 = h1.arcs, h2.arcs
    candidates: dict[int, list[int]] = {}
    for i in range(n):
        candidates[i] = sorted(
            (j for j in range(n) if colors2[j] == colors1[i]),
            key=lambda j: _set_key(h2.vertices[j]),
        )
        if not candidates[i]:
            return None
    order = sorted(range(n), key=lambda i: (len(candidates[i]), _set_key(h1.vertices[i])))
    assignment: dict[int, int] = {}
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for i2, j2 in assignment.items():
                if ((i, i2) in arcs1) != ((j, j2) in arcs2):
                    ok = False
                    break
                if ((i2, i) in arcs1) != ((j2, j) in arcs2):
                    ok = False
                    break
            if not ok:
                continue
            assignment[i] = j
            used[j] = True
            if extend(k + 1):
                return True
            del assignment[i]
            used[j] = False
        return False

    if not extend(0):
        return None
    for a, b in arcs1:
        if (assignment[a], assignment[b]) not in arcs2:
            raise VerificationFailedError("digraph iso failed arc re-check")
    return {h1.vertices[i]: h2.vertices[j] for i, j in assignment.items()}


def verify_ball_preserving(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace, mapping: dict[str, str]
) -> tuple[bool, tuple[str, frozenset[str], frozenset[str]] | None]:
    """Check images of X-balls are Y-balls and preimages of Y-balls X-balls.

    Returns (True, None) or (False, first violation) where the violation is
    ("image"|"preimage", ball members, offending image/preimage set).
    Raises NotABijectionError if the mapping is not a point bijection.
    """
    if set(mapping) != set(x.points) or len(set(mapping.values())) != len(mapping):
        raise NotABijectionError("mapping keys/values do not biject the point sets")
    if set(mapping.values()) != set(y.points):
        raise NotABijectionError("mapping keys/values do not biject the point sets")
    bx = enumerate_balls(x)
    by = enumerate_balls(y)
    x_sets = bx.member_sets()
    y_sets = by.member_sets()
    for ball in bx.balls:
        image = frozenset(mapping[p] for p in ball.members)
        if image not in y_sets:
            return (False, ("image", ball.members, image))
    inverse = {v: k for k, v in mapping.items()}
    for ball in by.balls:
        preimage = frozenset(inverse[p] for p in ball.members)
        if preimage not in x_sets:
            return (False, ("preimage", ball.members, preimage))
    return (True, None)


def ball_preserving_bijection(
    x: FiniteSemimetricSpace, y: FiniteSemimetricSpace
) -> dict[str, str] | None:
    """Point bijection whose ball images/preimages are balls, or None.

    Exists iff the Hasse diagrams are isomorphic; the map is read off a
    diagram isomorphism restricted to the zero-indegree vertices (the
    one-point balls) and then re-verified in full.
    """
    hx = hasse_diagram(enumerate_balls(x))
    hy = hasse_diagram(enumerate_balls(y))
    iso = hasse_digraph_iso(hx, hy)
    if iso is None:
        return None
    mapping: dict[str, str] = {}
    for bx_set, by_set in iso.items():
        if len(bx_set) == 1:
            if len(by_set) != 1:
                raise VerificationFailedError("singleton ball mapped to a larger ball")
            mapping[next(iter(bx_set))] = next(iter(by_set))
    ok, violation = verify_ball_preserving(x, y, mapping)
    if not ok:
        raise VerificationFailedError(f"extracted bijection not ball-preserving: {violation}")
    return mapping


# --- JSON / DOT wire formats --------------------------------------------------


def ballean_to_json(ballean: Ballean) -> dict:
    return {"balls": [sorted(b.members) for b in ballean.balls]}


def hasse_to_json(diagram: HasseDiagram) -> dict:
    return {
        "vertices": [sorted(v) for v in diagram.vertices],
        "arcs": [list(arc) for arc in diagram.sorted_arcs()],
    }


def hasse_iso_to_json(iso: dict[frozenset[str], frozenset[str]]) -> dict:
    pairs = sorted(iso.items(), key=lambda kv: _set_key(kv[0]))
    return {"map": [[sorted(a), sorted(b)] for a, b in pairs]}


def hasse_to_dot(diagram: HasseDiagram) -> str:
    lines = ["digraph hasse {"]
    for i, members in enumerate(diagram.vertices):
        text = "{" + ",".join(sorted(members)) + "}"
        lines.append(f'  b{i} [label="{text}"];')
    for a, b in diagram.sorted_arcs():
        lines.append(f"  b{a} -> b{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
