from fractions import Fraction as F

import pytest

from umtk import rank_relabel, space_from_pairs


@pytest.fixture
def ultra3():
    # three points, two of them closer to each other than to the first
    return space_from_pairs(
        ("p", "q", "r"),
        {("p", "q"): F(2), ("p", "r"): F(2), ("q", "r"): F(1)},
    )


@pytest.fixture
def ultra3_scaled(ultra3):
    return rank_relabel(ultra3, (F(0), F(10), F(20)))


@pytest.fixture
def semi3():
    # not ultrametric: d(a,c) > max(d(a,b), d(b,c))
    return space_from_pairs(
        ("a", "b", "c"),
        {("a", "b"): F(1), ("b", "c"): F(1), ("a", "c"): F(3)},
    )


@pytest.fixture
def semi3_variant():
    # isometric to semi3; the middle point is w here
    return space_from_pairs(
        ("u", "v", "w"),
        {("u", "v"): F(3), ("v", "w"): F(1), ("u", "w"): F(1)},
    )


def _two_blocks(sizes, inner, cross):
    names = [chr(ord("a") + i) for i in range(sum(sizes))]
    dists = {}
    start = 0
    blocks = []
    for size, d in zip(sizes, inner):
        block = names[start : start + size]
        blocks.append(block)
        for i in range(size):
            for j in range(i + 1, size):
                dists[(block[i], block[j])] = d
        start += size
    for x in blocks[0]:
        for y in blocks[1]:
            dists[(x, y)] = cross
    return space_from_pairs(tuple(names), dists)


@pytest.fixture
def blocks4():
    # {a,b} at 1, {c,d} at 2, cross 3
    return _two_blocks((2, 2), (F(1), F(2)), F(3))


@pytest.fixture
def blocks4_swapped():
    # {a,b} at 2, {c,d} at 1, cross 3
    return _two_blocks((2, 2), (F(2), F(1)), F(3))


@pytest.fixture
def blocks5():
    # {a,b} at 1, {c,d,e} at 2, cross 3 -- uneven fan sizes
    return _two_blocks((2, 3), (F(1), F(2)), F(3))
