from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umtk import (
    FiniteSemimetricSpace,
    diameter,
    format_rational,
    is_ultrametric,
    parse_rational,
    rank_relabel,
    space_from_json,
    space_from_pairs,
    space_to_json,
    spectrum,
    ultrametric_violation,
    validate_semimetric,
)
from umtk.errors import (
    DuplicatePointNameError,
    EmptySpaceError,
    FormatError,
    MatrixShapeError,
    NegativeDistanceError,
    NonSymmetricError,
    NonZeroDiagonalError,
    SpectrumSizeMismatchError,
    TargetNotIncreasingError,
    TargetNotStartingAtZeroError,
    UnknownPointError,
    ZeroOffDiagonalError,
)
from umtk.spaces import space_from_text, space_to_text


def test_one_point_space():
    space = validate_semimetric(("p",), ((F(0),),))
    assert len(space) == 1
    assert spectrum(space) == (F(0),)
    assert diameter(space) == 0
    assert is_ultrametric(space)


def test_validation_rejects_bad_matrices():
    with pytest.raises(NonSymmetricError):
        validate_semimetric(("p", "q"), ((F(0), F(2)), (F(3), F(0))))
    with pytest.raises(NonZeroDiagonalError):
        validate_semimetric(("p", "q"), ((F(1), F(2)), (F(2), F(0))))
    with pytest.raises(ZeroOffDiagonalError):
        validate_semimetric(("p", "q"), ((F(0), F(0)), (F(0), F(0))))
    with pytest.raises(NegativeDistanceError):
        validate_semimetric(("p", "q"), ((F(0), F(-1)), (F(-1), F(0))))
    with pytest.raises(DuplicatePointNameError):
        validate_semimetric(("p", "p"), ((F(0), F(1)), (F(1), F(0))))
    with pytest.raises(EmptySpaceError):
        validate_semimetric((), ())
    with pytest.raises(MatrixShapeError):
        validate_semimetric(("p", "q"), ((F(0), F(1)),))


def test_floats_are_rejected():
    with pytest.raises(FormatError):
        validate_semimetric(("p", "q"), ((0, 0.5), (0.5, 0)))


def test_spectrum_and_diameter(ultra3, semi3):
    assert spectrum(ultra3) == (F(0), F(1), F(2))
    assert spectrum(semi3) == (F(0), F(1), F(3))
    assert diameter(ultra3) == F(2)
    assert diameter(semi3) == F(3)


def test_ultrametric_check(ultra3, semi3):
    assert is_ultrametric(ultra3)
    assert ultrametric_violation(ultra3) is None
    violation = ultrametric_violation(semi3)
    assert violation == ("a", "c", "b")
    x, y, z = violation
    assert semi3.distance(x, y) > max(semi3.distance(x, z), semi3.distance(z, y))


def test_two_point_spaces_are_ultrametric():
    space = space_from_pairs(("x", "y"), {("x", "y"): F(7, 3)})
    assert is_ultrametric(space)


def test_rank_relabel(ultra3):
    scaled = rank_relabel(ultra3, (F(0), F(10), F(20)))
    assert scaled.distance("p", "q") == F(20)
    assert scaled.distance("p", "r") == F(20)
    assert scaled.distance("q", "r") == F(10)
    assert spectrum(scaled) == (F(0), F(10), F(20))

    unchanged = rank_relabel(ultra3, spectrum(ultra3))
    assert unchanged.dist == ultra3.dist

    with pytest.raises(SpectrumSizeMismatchError):
        rank_relabel(ultra3, (F(0), F(1)))
    with pytest.raises(TargetNotStartingAtZeroError):
        rank_relabel(ultra3, (F(1), F(2), F(3)))
    with pytest.raises(TargetNotIncreasingError):
        rank_relabel(ultra3, (F(0), F(5), F(5)))


def test_rank_relabel_preserves_ultrametricity(ultra3, semi3):
    assert is_ultrametric(rank_relabel(ultra3, (F(0), F(1, 3), F(1, 2))))
    assert not is_ultrametric(rank_relabel(semi3, (F(0), F(2), F(9))))


def test_distance_lookup(ultra3):
    assert ultra3.distance("q", "q") == 0
    assert ultra3.distance("q", "r") == F(1)
    with pytest.raises(UnknownPointError):
        ultra3.distance("q", "nope")


def test_restrict_reorders_and_subsets(ultra3):
    sub = ultra3.restrict(("r", "q"))
    assert sub.points == ("r", "q")
    assert sub.distance("q", "r") == F(1)
    with pytest.raises(UnknownPointError):
        ultra3.restrict(("p", "zzz"))


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_rational_text_round_trip(num, den):
    value = F(num, den)
    assert parse_rational(format_rational(value)) == value


@pytest.mark.parametrize("bad", ["", "1.5", "2/0", "1/-2", "a", "1/2/3", " 1"])
def test_parse_rational_rejects(bad):
    with pytest.raises(FormatError):
        parse_rational(bad)


def test_json_document_round_trip(ultra3):
    doc = space_to_json(ultra3)
    assert doc == {
        "points": ["p", "q", "r"],
        "dist": [["0", "2", "2"], ["2", "0", "1"], ["2", "1", "0"]],
    }
    assert space_from_json(doc) == ultra3
    text = space_to_text(ultra3)
    assert space_to_text(space_from_text(text)) == text


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"points": ["p"]},
        {"points": ["p"], "dist": [[0]]},  # numbers must be strings
        {"points": ["p", "q"], "dist": [["0", "x"], ["x", "0"]]},
    ],
)
def test_bad_space_documents(doc):
    with pytest.raises(FormatError):
        space_from_json(doc)


def test_spaces_are_hashable_values(ultra3):
    again = space_from_pairs(
        ("p", "q", "r"),
        {("p", "q"): F(2), ("p", "r"): F(2), ("q", "r"): F(1)},
    )
    assert again == ultra3
    assert hash(again) == hash(ultra3)
    assert isinstance(again, FiniteSemimetricSpace)
