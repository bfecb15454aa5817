"""Self-checking property suites behind ``umtk check``.

Each suite replays a deterministic seeded instance stream and cross-validates
a decision procedure against an independent brute-force oracle or a structural
invariant. Suites never share mutable state: a suite that revisits another's
instances regenerates the stream from the same seed, so they can run in any
order (or concurrently) and aggregate order-independently.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .balls import (
    ball_preserving_bijection,
    enumerate_balls,
    hasse_diagram,
    hasse_digraph_iso,
    reversed_is_rooted_tree,
    verify_ball_preserving,
)
from .classify import (
    WeakSimWitness,
    adversarial_relabeling,
    classify_space,
    witness_from_unlabeled_iso,
)
from .diametrical import diametrical_graph, multipartite_parts, rebuild_edges
from .errors import SpaceTooSmallError
from .generators import (
    GenConfig,
    oracle_ball_preserving,
    oracle_isometry,
    oracle_weak_similarity,
    random_relabeled,
    random_semimetric,
    random_ultrametric,
    renamed_copy,
)
from .reptree import build_tree, space_from_tree
from .similarity import (
    decide_isometry,
    decide_weak_similarity,
    verify_isometry,
    verify_weak_similarity,
)
from .spaces import (
    FiniteSemimetricSpace,
    is_ultrametric,
    rank_relabel,
    space_from_pairs,
    spectrum,
)
from .treecanon import canon_code_labeled, canon_code_unlabeled

MAX_REPORTED_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    passed: bool
    trials: int
    seconds: float
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "ok" if self.passed else "FAIL"
        text = f"{self.name:<24} {verdict:<4} {self.trials:>5} trials  {self.seconds:7.2f}s"
        if self.failures:
            text += "  " + self.failures[0]
        return text


class _Recorder:
    def __init__(self, name: str) -> None:
        self.name = name
        self.trials = 0
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def tick(self) -> None:
        self.trials += 1

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(message)
        elif len(self.failures) == MAX_REPORTED_FAILURES:
            self.failures.append("...")

    def check(self, condition: bool, message: str) -> bool:
        if not condition:
            self.fail(message)
        return condition

    def result(self) -> SuiteResult:
        return SuiteResult(
            self.name,
            not self.failures,
            self.trials,
            time.perf_counter() - self.start,
            self.failures,
        )


def _cap(value: int | None, default: int, floor: int = 1) -> int:
    if value is None:
        return default
    return max(floor, min(value, default))


def _trial_count(trials: int | None, default: int) -> int:
    return default if trials is None else max(1, trials)


def _seed_for(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def _random_space(
    rng: random.Random, iseed: int, n: int, ultra: bool, force: str | None = None
) -> FiniteSemimetricSpace:
    config = GenConfig(seed=iseed, n=n, force_class=force)
    return random_ultrametric(config) if ultra else random_semimetric(config)


def _forced_class(rng: random.Random, n: int) -> str | None:
    force = rng.choice((None, None, "R", "Rtilde", "D", "T"))
    if force == "R" and n - 1 > len(GenConfig().spectrum_pool):
        force = "Rtilde"  # a strictly binary chain cannot fit this many leaves
    return force


def _stretched_target(sp: tuple[Fraction, ...], rng: random.Random) -> tuple[Fraction, ...]:
    """Strictly increasing spectrum of the same size, starting at 0."""
    target = [Fraction(0)]
    for _ in sp[1:]:
        target.append(target[-1] + Fraction(rng.randint(1, 9), rng.randint(1, 3)))
    return tuple(target)


def _ultra_stream(seed: int, trials: int, max_n: int, tag: str, n_lo: int = 1):
    for i in range(trials):
        rng = random.Random(f"{seed}:{tag}:{i}")
        n = rng.randint(n_lo, max_n)
        yield i, _random_space(rng, _seed_for(seed, i), n, True, _forced_class(rng, n))


def _mixed_pairs(seed: int, trials: int, max_n: int, tag: str):
    """Pairs mixing ultrametric/semimetric inputs with engineered relations.

    Modes: unrelated draws; a renamed copy (always positive for every
    relation); a rank-relabeled renamed copy (weakly similar, not isometric
    unless the stretch is trivial); a same-shape relabeling (ultrametric
    inputs only).
    """
    for i in range(trials):
        rng = random.Random(f"{seed}:{tag}:{i}")
        n = rng.randint(1, max_n)
        iseed = _seed_for(seed, i)
        ultra = rng.random() < 0.5
        base = _random_space(rng, iseed, n, ultra)
        mode = rng.choice(("unrelated", "copy", "rank-relabel", "shape-relabel"))
        if mode == "unrelated":
            other = _random_space(
                rng, iseed + 7919, rng.randint(1, max_n), rng.random() < 0.5
            )
        elif mode == "copy":
            other, _ = renamed_copy(base, iseed)
        elif mode == "rank-relabel":
            stretched = rank_relabel(base, _stretched_target(spectrum(base), rng))
            other, _ = renamed_copy(stretched, iseed)
        else:
            same_shape = random_relabeled(base, iseed) if is_ultrametric(base) else base
            other, _ = renamed_copy(same_shape, iseed)
        yield i, base, other


# --- the ten suites -----------------------------------------------------------


def tree_roundtrip_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Rebuilding a space from its representing tree reproduces the matrix."""
    rec = _Recorder("tree-roundtrip")
    count = _trial_count(trials, 500)
    top = _cap(max_n, 12)
    for i, space in _ultra_stream(seed, count, top, "roundtrip"):
        rec.tick()
        back = space_from_tree(build_tree(space))
        if not rec.check(
            set(back.points) == set(space.points),
            f"trial {i}: round-trip changed the point set",
        ):
            continue
        aligned = back.restrict(space.points)
        rec.check(
            aligned.points == space.points and aligned.dist == space.dist,
            f"trial {i}: round-trip changed the matrix",
        )
    return rec.result()


def diametrical_partition_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Diametrical graphs of the round-trip stream are complete multipartite."""
    rec = _Recorder("diametrical-partition")
    count = _trial_count(trials, 500)
    top = _cap(max_n, 12)
    for i, space in _ultra_stream(seed, count, top, "roundtrip"):
        rec.tick()
        if len(space) < 2:
            try:
                diametrical_graph(space)
            except SpaceTooSmallError:
                continue
            rec.fail(f"trial {i}: one-point space must be rejected")
            continue
        graph = diametrical_graph(space)
        parts = multipartite_parts(graph)
        rec.check(
            rebuild_edges(parts) == graph.edges,
            f"trial {i}: partition does not rebuild the edge set",
        )
    return rec.result()


def isometry_agreement_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """decide_isometry == exhaustive oracle == labeled canonical-code equality."""
    rec = _Recorder("isometry-oracle")
    count = _trial_count(trials, 200)
    top = _cap(max_n, 7)
    for i in range(count):
        rng = random.Random(f"{seed}:iso:{i}")
        n = rng.randint(1, top)
        iseed = _seed_for(seed, i)
        x = _random_space(rng, iseed, n, True)
        mode = rng.choice(("unrelated", "copy", "shape-relabel", "rank-relabel"))
        if mode == "unrelated":
            y = _random_space(rng, iseed + 7919, rng.randint(1, top), True)
        elif mode == "copy":
            y, _ = renamed_copy(x, iseed)
        elif mode == "shape-relabel":
            y, _ = renamed_copy(random_relabeled(x, iseed), iseed)
        else:
            y, _ = renamed_copy(
                rank_relabel(x, _stretched_target(spectrum(x), rng)), iseed
            )
        rec.tick()
        witness = decide_isometry(x, y)
        oracle = oracle_isometry(x, y)
        if not rec.check(
            (witness is None) == (oracle is None),
            f"trial {i}: decide_isometry disagrees with the oracle",
        ):
            continue
        codes_equal = canon_code_labeled(build_tree(x)) == canon_code_labeled(build_tree(y))
        rec.check(
            codes_equal == (witness is not None),
            f"trial {i}: labeled canonical codes disagree with the decision",
        )
        if witness is not None:
            rec.check(
                verify_isometry(x, y, witness.phi),
                f"trial {i}: returned isometry does not verify",
            )
    return rec.result()


def weak_similarity_agreement_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """decide_weak_similarity matches the oracle; witnesses re-verify."""
    rec = _Recorder("weaksim-oracle")
    count = _trial_count(trials, 200)
    top = _cap(max_n, 6)
    positives = 0
    for i, x, y in _mixed_pairs(seed, count, top, "weaksim"):
        rec.tick()
        witness = decide_weak_similarity(x, y)
        oracle = oracle_weak_similarity(x, y)
        rec.check(
            (witness is None) == (oracle is None),
            f"trial {i}: decide_weak_similarity disagrees with the oracle",
        )
        if witness is not None:
            positives += 1
            rec.check(
                verify_weak_similarity(x, y, witness),
                f"trial {i}: returned weak-similarity witness does not verify",
            )
    rec.check(positives > 0, "stream produced no weakly similar pairs")
    return rec.result()


def chain_shape_witness_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Single-inner-node-per-level trees: any relabeling stays weakly similar,
    recoverable from the unlabeled shape alone; for every other tree some
    valid relabeling preserves the shape but breaks weak similarity."""
    rec = _Recorder("chain-shape-witness")
    count = _trial_count(trials, 100)
    top = _cap(max_n, 10, floor=4)
    for i in range(count):
        rng = random.Random(f"{seed}:chainfwd:{i}")
        n = rng.randint(2, top)
        iseed = _seed_for(seed, i)
        x = random_ultrametric(GenConfig(seed=iseed, n=n, force_class="Rtilde"))
        rec.tick()
        if not rec.check(
            classify_space(x).inner_chain, f"trial {i}: generator left the class"
        ):
            continue
        y, _ = renamed_copy(random_relabeled(x, iseed), iseed)
        outcome = witness_from_unlabeled_iso(x, y)
        if not rec.check(
            isinstance(outcome, WeakSimWitness),
            f"trial {i}: no witness from the unlabeled shape ({outcome})",
        ):
            continue
        rec.check(
            verify_weak_similarity(x, y, outcome),
            f"trial {i}: shape-derived witness does not verify",
        )
    for i in range(count):
        rng = random.Random(f"{seed}:chainconv:{i}")
        iseed = _seed_for(seed, i) + 104_729
        x = None
        for attempt in range(50):
            n = rng.randint(4, top)
            candidate = random_ultrametric(GenConfig(seed=iseed + attempt, n=n))
            if not classify_space(candidate).inner_chain:
                x = candidate
                break
        rec.tick()
        if not rec.check(x is not None, f"converse {i}: found no off-class space"):
            continue
        assert x is not None
        y = adversarial_relabeling(x)
        rec.check(
            canon_code_unlabeled(build_tree(x)) == canon_code_unlabeled(build_tree(y)),
            f"converse {i}: relabeling changed the unlabeled shape",
        )
        rec.check(
            decide_weak_similarity(x, y) is None,
            f"converse {i}: adversarial relabeling is still weakly similar",
        )
    return rec.result()


def fan_shape_witness_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Injectively labeled trees with uniform last level: shape isomorphism
    already forces weak similarity, and the derived witness agrees with the
    general decision procedure."""
    rec = _Recorder("fan-shape-witness")
    count = _trial_count(trials, 100)
    top = _cap(max_n, 12, floor=2)
    for i in range(count):
        rng = random.Random(f"{seed}:fan:{i}")
        n = rng.randint(2, top)
        iseed = _seed_for(seed, i)
        x = random_ultrametric(GenConfig(seed=iseed, n=n, force_class="T"))
        rec.tick()
        report = classify_space(x)
        if not rec.check(
            report.distinct_labels and report.uniform_last_level,
            f"trial {i}: generator left the class",
        ):
            continue
        y, _ = renamed_copy(random_relabeled(x, iseed, distinct=True), iseed)
        ry = classify_space(y)
        rec.check(
            ry.distinct_labels and ry.uniform_last_level,
            f"trial {i}: relabeling left the class",
        )
        outcome = witness_from_unlabeled_iso(x, y)
        if not rec.check(
            isinstance(outcome, WeakSimWitness),
            f"trial {i}: no witness from the unlabeled shape ({outcome})",
        ):
            continue
        rec.check(
            verify_weak_similarity(x, y, outcome),
            f"trial {i}: shape-derived witness does not verify",
        )
        rec.check(
            decide_weak_similarity(x, y) is not None,
            f"trial {i}: general decision disagrees",
        )
    return rec.result()


def weaksim_hasse_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Weakly similar pairs always have isomorphic Hasse diagrams."""
    rec = _Recorder("weaksim-hasse")
    count = _trial_count(trials, 200)
    top = _cap(max_n, 6)
    positives = 0
    for i, x, y in _mixed_pairs(seed, count, top, "weaksim"):
        if decide_weak_similarity(x, y) is None:
            continue
        positives += 1
        rec.tick()
        hx = hasse_diagram(enumerate_balls(x))
        hy = hasse_diagram(enumerate_balls(y))
        rec.check(
            hasse_digraph_iso(hx, hy) is not None,
            f"trial {i}: weakly similar pair with non-isomorphic diagrams",
        )
    rec.check(positives > 0, "stream produced no weakly similar pairs")
    return rec.result()


def ball_preserving_agreement_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """ball_preserving_bijection == exhaustive oracle == Hasse isomorphism."""
    rec = _Recorder("ballpreserving-oracle")
    count = _trial_count(trials, 150)
    top = _cap(max_n, 6)
    for i, x, y in _mixed_pairs(seed, count, top, "ballpres"):
        rec.tick()
        fast = ball_preserving_bijection(x, y)
        slow = oracle_ball_preserving(x, y)
        rec.check(
            (fast is None) == (slow is None),
            f"trial {i}: ball_preserving_bijection disagrees with the oracle",
        )
        hx = hasse_diagram(enumerate_balls(x))
        hy = hasse_diagram(enumerate_balls(y))
        rec.check(
            (fast is None) == (hasse_digraph_iso(hx, hy) is None),
            f"trial {i}: decision does not coincide with Hasse isomorphism",
        )
        if fast is not None:
            ok, violation = verify_ball_preserving(x, y, fast)
            rec.check(ok, f"trial {i}: returned bijection violates {violation}")
    return rec.result()


def witness_ball_preserving_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Weak-similarity witnesses are ball-preserving; for ultrametric pairs
    unlabeled-shape equality coincides with ball-preserving existence."""
    rec = _Recorder("witness-ballpreserving")
    count = _trial_count(trials, 200)
    top = _cap(max_n, 6)
    positives = 0
    for i, x, y in _mixed_pairs(seed, count, top, "weaksim"):
        witness = decide_weak_similarity(x, y)
        if witness is None:
            continue
        positives += 1
        rec.tick()
        ok, violation = verify_ball_preserving(x, y, witness.phi)
        rec.check(ok, f"trial {i}: weak-similarity witness violates {violation}")
    rec.check(positives > 0, "stream produced no weakly similar pairs")
    for i in range(count):
        rng = random.Random(f"{seed}:canonballs:{i}")
        n = rng.randint(1, _cap(max_n, 8))
        iseed = _seed_for(seed, i) + 15_485_863
        x = _random_space(rng, iseed, n, True, _forced_class(rng, n))
        if rng.random() < 0.5:
            y, _ = renamed_copy(random_relabeled(x, iseed), iseed)
        else:
            m = rng.randint(1, _cap(max_n, 8))
            y = _random_space(rng, iseed + 7919, m, True, _forced_class(rng, m))
        rec.tick()
        codes_equal = canon_code_unlabeled(build_tree(x)) == canon_code_unlabeled(
            build_tree(y)
        )
        bijection = ball_preserving_bijection(x, y)
        rec.check(
            codes_equal == (bijection is not None),
            f"ultra trial {i}: unlabeled shape equality vs ball preservation",
        )
        if bijection is not None and len(x) <= 6:
            rec.check(
                oracle_ball_preserving(x, y) is not None,
                f"ultra trial {i}: oracle finds no ball-preserving bijection",
            )
    return rec.result()


def hasse_tree_shape_suite(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> SuiteResult:
    """Ultrametric balleans order into a rooted tree; the fixed three-point
    non-ultrametric example does not (one singleton is covered twice)."""
    rec = _Recorder("hasse-tree-shape")
    count = _trial_count(trials, 200)
    top = _cap(max_n, 9)
    for i, space in _ultra_stream(seed, count, top, "hasseshape"):
        rec.tick()
        diagram = hasse_diagram(enumerate_balls(space))
        rec.check(
            reversed_is_rooted_tree(diagram),
            f"trial {i}: ultrametric Hasse diagram is not a reversed tree",
        )
    fixed = space_from_pairs(
        ("a", "b", "c"),
        {("a", "b"): Fraction(1), ("b", "c"): Fraction(1), ("a", "c"): Fraction(3)},
    )
    diagram = hasse_diagram(enumerate_balls(fixed))
    rec.tick()
    rec.check(
        not reversed_is_rooted_tree(diagram),
        "fixed example unexpectedly orders into a tree",
    )
    b_index = diagram.vertices.index(frozenset({"b"}))
    rec.check(
        diagram.out_degrees()[b_index] == 2,
        "fixed example: the shared point is not covered twice",
    )
    return rec.result()


ALL_SUITES = (
    tree_roundtrip_suite,
    diametrical_partition_suite,
    isometry_agreement_suite,
    weak_similarity_agreement_suite,
    chain_shape_witness_suite,
    fan_shape_witness_suite,
    weaksim_hasse_suite,
    ball_preserving_agreement_suite,
    witness_ball_preserving_suite,
    hasse_tree_shape_suite,
)


def run_all(
    seed: int = 0, trials: int | None = None, max_n: int | None = None
) -> list[SuiteResult]:
    return [suite(seed, trials, max_n) for suite in ALL_SUITES]
