import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcpnet.core import DimensionError
from mcpnet.imageio import (
    Accepted,
    Bitmap16,
    Encoding,
    PbmError,
    Rejected,
    classify,
    decide_class,
    encode,
    format_decision,
    parse_labels,
    parse_pbm,
    render_pbm,
)
from mcpnet.mlp import Activation, Layer, Mlp

WHITE = Bitmap16.from_array(np.zeros((16, 16), dtype=int))
BLACK = Bitmap16.from_array(np.ones((16, 16), dtype=int))


def stub_network(scores, n_in=256):
    """Identity output layer that ignores its input and emits ``scores``."""
    scores = np.asarray(scores, dtype=float)
    return Mlp([Layer(np.zeros((scores.size, n_in)), scores.copy(), Activation.IDENTITY)])


bitmaps = st.lists(st.integers(0, 1), min_size=256, max_size=256).map(
    lambda bits: Bitmap16.from_array(np.array(bits).reshape(16, 16))
)


def test_parse_all_white():
    text = "P1\n16 16\n" + "\n".join(" ".join("0" * 16) for _ in range(16)) + "\n"
    assert parse_pbm(text.encode()) == WHITE


def test_parse_comments_and_packed_rows():
    rows = ["1" + "0" * 15] + ["0" * 16] * 15
    text = "P1\n# a comment\n16 # width\n16\n" + "\n".join(rows) + "\n"
    bm = parse_pbm(text)
    assert bm.pixels[0][0] == 1 and sum(map(sum, bm.pixels)) == 1


@pytest.mark.parametrize(
    "text, msg",
    [
        ("P1\n8 8\n" + "0 " * 64, "16x16"),
        ("P4\n16 16\n", "magic"),
        ("P1\n16 16\n" + "0 " * 255 + "2", "0/1"),
        ("P1\n16 16\n" + "0 " * 100, "truncated"),
        ("P1\n16\n", "dimensions"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(PbmError, match=msg):
        parse_pbm(text)


@settings(max_examples=100)
@given(bm=bitmaps)
def test_render_parse_round_trip(bm):
    assert parse_pbm(render_pbm(bm, comment="test")) == bm


def test_encode_white_flat():
    vec = encode(WHITE, Encoding.FLAT256)
    assert vec.shape == (256,) and not vec.any()


def test_encode_leftmost_pixel_rowword():
    arr = np.zeros((16, 16), dtype=int)
    arr[0, 0] = 1
    vec = encode(Bitmap16.from_array(arr), Encoding.ROWWORD16)
    assert vec[0] == 32768 / 65535
    assert not vec[1:].any()


def test_encode_black_rowword():
    np.testing.assert_array_equal(encode(BLACK, Encoding.ROWWORD16), np.ones(16))


@settings(max_examples=100)
@given(a=bitmaps, b=bitmaps)
def test_encodings_in_range_and_injective(a, b):
    for scheme in Encoding:
        va, vb = encode(a, scheme), encode(b, scheme)
        assert va.shape == (scheme.width,)
        assert np.all((va >= 0) & (va <= 1))
        assert (a == b) == np.array_equal(va, vb)
    assert set(np.unique(encode(a, Encoding.FLAT256))) <= {0.0, 1.0}


def test_rowword_matches_integer_reading():
    rng = np.random.default_rng(2)
    arr = rng.integers(0, 2, (16, 16))
    vec = encode(Bitmap16.from_array(arr), Encoding.ROWWORD16)
    expected = [int("".join(map(str, row)), 2) / 65535 for row in arr]
    assert list(vec) == expected


def test_none_above_threshold():
    assert classify(stub_network([0.1] * 30), WHITE) == Rejected("none-above-threshold")


def test_single_class_accepted():
    scores = [0.1] * 30
    scores[7] = 0.95
    assert classify(stub_network(scores), WHITE) == Accepted(7, 0.95)


def test_ambiguous():
    scores = [0.1] * 30
    scores[2] = scores[5] = 0.9
    assert classify(stub_network(scores), WHITE) == Rejected("ambiguous", ((2, 0.9), (5, 0.9)))


def test_ambiguous_sorted_by_score():
    scores = [0.0] * 30
    scores[1], scores[3], scores[4] = 0.85, 0.99, 0.85
    decision = decide_class(scores)
    assert [c for c, _ in decision.candidates] == [3, 1, 4]


def test_threshold_is_inclusive():
    scores = [0.0] * 30
    scores[4] = 0.8
    assert classify(stub_network(scores), BLACK) == Accepted(4, 0.8)
    assert isinstance(classify(stub_network(scores), BLACK, threshold=0.81), Rejected)


def test_rowword_network():
    scores = [0.0] * 30
    scores[0] = 0.9
    assert classify(stub_network(scores, n_in=16), BLACK, Encoding.ROWWORD16) == Accepted(0, 0.9)


def test_dimension_checks():
    with pytest.raises(DimensionError):
        classify(stub_network([0.0] * 30, n_in=16), WHITE, Encoding.FLAT256)
    with pytest.raises(DimensionError):
        classify(stub_network([0.0] * 30), WHITE, labels=["a"] * 29)


def test_format_decision():
    labels = [f"shape{i}" for i in range(30)]
    assert format_decision(Accepted(7, 0.95), labels) == "accepted shape7 0.95"
    assert format_decision(Rejected("none-above-threshold"), labels) == "rejected none-above-threshold"
    assert format_decision(Rejected("ambiguous", ((2, 0.9), (5, 0.9))), labels).startswith("rejected ambiguous")


def test_labels():
    assert parse_labels("circle\nsquare\n\ntriangle\n") == ["circle", "square", "triangle"]
