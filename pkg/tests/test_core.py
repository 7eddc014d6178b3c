import pytest
from hypothesis import given, strategies as st

from gapcode.core import (
    BitString,
    Codeword,
    GapVector,
    MalformedCodewordError,
    ParameterError,
    cshift,
    dec,
    extract_gaps,
    from_dec,
    gap,
)


class TestDec:
    def test_paper_values(self):
        assert dec((1, 0, 1, 0)) == 10
        assert dec((1, 1)) == 3

    def test_all_zero(self):
        assert dec((0, 0, 0)) == 0

    def test_empty(self):
        assert dec("") == 0
        assert dec(()) == 0

    def test_text_and_bits_agree(self):
        assert dec("101011100") == dec((1, 0, 1, 0, 1, 1, 1, 0, 0)) == 348

    def test_rejects_non_binary(self):
        with pytest.raises(ParameterError):
            dec((0, 2, 1))
        with pytest.raises(ParameterError):
            dec("10x")


class TestFromDec:
    def test_inverse_of_paper_value(self):
        assert from_dec(10, 4).bits() == (1, 0, 1, 0)

    def test_zero(self):
        assert from_dec(0, 3).bits() == (0, 0, 0)

    def test_power(self):
        assert from_dec(64, 7).bits() == (1, 0, 0, 0, 0, 0, 0)

    def test_overflow(self):
        with pytest.raises(ParameterError):
            from_dec(16, 4)
        with pytest.raises(ParameterError):
            from_dec(-1, 4)

    @given(st.integers(1, 64), st.data())
    def test_round_trip(self, length, data):
        v = data.draw(st.integers(0, (1 << length) - 1))
        assert dec(from_dec(v, length)) == v
        assert len(from_dec(v, length)) == length


class TestBitString:
    def test_indexing_msb_first(self):
        x = BitString.from_text("1010")
        assert [x[i] for i in range(4)] == [1, 0, 1, 0]
        assert x.value == 10

    def test_text_round_trip(self):
        for text in ("", "0", "1", "101011100", "0001"):
            assert BitString.from_text(text).text() == text

    def test_concat(self):
        a = BitString.from_text("10")
        b = BitString.from_text("011")
        assert a.concat(b).text() == "10011"

    def test_validation(self):
        with pytest.raises(ParameterError):
            BitString(4, 2)
        with pytest.raises(ParameterError):
            BitString(0, -1)


class TestGap:
    def test_paper_values(self):
        assert gap(127, 10, 128) == 10
        assert gap(26, 32, 128) == 5

    def test_adjacent(self):
        assert gap(5, 6, 128) == 0

    def test_same_position_wraps_full_circle(self):
        assert gap(3, 3, 8) == 7

    def test_domain(self):
        with pytest.raises(ParameterError):
            gap(128, 0, 128)
        with pytest.raises(ParameterError):
            gap(0, -1, 128)


class TestCshift:
    def test_identity(self):
        assert cshift((1, 2, 3), 0) == (1, 2, 3)

    def test_by_one(self):
        assert cshift((1, 2, 3), 1) == (2, 3, 1)

    def test_constant_fixed(self):
        assert cshift((5, 5, 5), 2) == (5, 5, 5)

    def test_modular_offset(self):
        assert cshift((1, 2, 3), 4) == cshift((1, 2, 3), 1)
        assert cshift((1, 2, 3), -1) == (3, 1, 2)

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=12), st.integers(0, 11))
    def test_shift_composition_inverts(self, g, off):
        w = len(g)
        assert cshift(cshift(g, off), w - (off % w)) == tuple(g)


class TestCodeword:
    def test_requires_strictly_increasing(self):
        with pytest.raises(ParameterError):
            Codeword(8, (3, 3))
        with pytest.raises(ParameterError):
            Codeword(8, (5, 2))
        with pytest.raises(ParameterError):
            Codeword(8, (0, 8))

    def test_bits_text_round_trip(self):
        c = Codeword(16, (1, 2, 10, 14))
        assert c.bits_text() == "0110000000100010"
        assert Codeword.from_bits_text(c.bits_text()) == c

    def test_ones_text_round_trip(self):
        c = Codeword(16, (1, 2, 10, 14))
        assert c.ones_text() == "n=16:1,2,10,14"
        assert Codeword.from_ones_text("n=16:1,2,10,14") == c

    def test_ones_text_rejects_garbage(self):
        with pytest.raises(ParameterError):
            Codeword.from_ones_text("16:1,2")
        with pytest.raises(ParameterError):
            Codeword.from_ones_text("n=16:2,1")

    def test_rotated(self):
        c = Codeword(8, (0, 1, 6))
        assert c.rotated(2).ones == (0, 2, 3)
        assert c.rotated(8) == c


class TestExtractGaps:
    def test_paper_example(self):
        c = Codeword(128, (10, 26, 32, 37, 64, 96, 127))
        assert extract_gaps(c).g == (10, 15, 5, 4, 26, 31, 30)

    def test_leading_run(self):
        assert extract_gaps(Codeword(8, (0, 1, 2))).g == (5, 0, 0)

    def test_single_one(self):
        assert extract_gaps(Codeword(4, (0,))).g == (3,)

    def test_zero_weight(self):
        with pytest.raises(MalformedCodewordError):
            extract_gaps(Codeword(8, ()))

    @given(st.data())
    def test_gap_sum_invariant(self, data):
        n = data.draw(st.integers(2, 64))
        w = data.draw(st.integers(1, n))
        ones = tuple(sorted(data.draw(
            st.sets(st.integers(0, n - 1), min_size=w, max_size=w))))
        gv = extract_gaps(Codeword(n, ones))
        assert sum(gv.g) + len(gv.g) == n

    @given(st.data())
    def test_rotation_rotates_gaps(self, data):
        n = data.draw(st.integers(3, 64))
        w = data.draw(st.integers(1, n - 1))
        ones = tuple(sorted(data.draw(
            st.sets(st.integers(0, n - 1), min_size=w, max_size=w))))
        off = data.draw(st.integers(0, n - 1))
        base = extract_gaps(Codeword(n, ones)).g
        rot = extract_gaps(Codeword(n, ones).rotated(off)).g
        assert any(cshift(base, s) == rot for s in range(w))


def test_gap_vector_invariant_enforced():
    GapVector((5, 0, 0), 8)
    with pytest.raises(ParameterError):
        GapVector((5, 0, 1), 8)
