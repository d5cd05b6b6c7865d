import pytest
from hypothesis import given
from hypothesis import strategies as st

from circnim.core import GameSpec, dihedral_images, options
from circnim.losing_sets import (
    NegativeHeight,
    UnsupportedGame,
    characterization_tag,
    is_characterized,
    membership,
    translate,
    two_minima_form,
)
from conftest import all_positions, recursive_outcome

CHARACTERIZED = [(4, 2), (5, 2), (5, 3), (6, 3), (6, 4), (8, 6)]


class TestTagging:
    @pytest.mark.parametrize(
        "n,k,tag",
        [
            (7, 1, "CN_n_1"),
            (7, 7, "CN_n_n"),
            (7, 6, "CN_n_nminus1"),
            (4, 2, "CN_4_2"),
            (8, 6, "CN_8_6"),
        ],
    )
    def test_tags(self, n, k, tag):
        assert characterization_tag(GameSpec(n, k)) == tag

    @pytest.mark.parametrize("n,k", [(6, 2), (7, 3), (7, 4), (8, 4), (9, 5)])
    def test_uncharacterized(self, n, k):
        assert not is_characterized(GameSpec(n, k))
        with pytest.raises(UnsupportedGame):
            membership(GameSpec(n, k), (0,) * n)


class TestMembershipExamples:
    @pytest.mark.parametrize(
        "n,k,pos,expected",
        [
            (4, 2, (3, 2, 3, 2), True),
            (5, 2, (0, 5, 0, 3, 2), True),
            (5, 3, (3, 7, 0, 7, 4), True),
            (6, 3, (5, 9, 0, 5, 9, 0), True),
            (6, 4, (1, 2, 3, 1, 2, 3), True),
            (8, 6, (0, 3, 1, 2, 3, 1, 2, 3), True),
            (6, 3, (10, 9, 5, 8, 4, 3), False),
            (4, 2, (3, 5, 4, 2), False),
            (5, 2, (0, 6, 4, 3, 2), False),
        ],
    )
    def test_paper_positions(self, n, k, pos, expected):
        assert membership(GameSpec(n, k), pos) is expected

    @pytest.mark.parametrize("n,k", CHARACTERIZED + [(3, 1), (4, 4), (5, 4)])
    def test_all_zeros_is_losing(self, n, k):
        assert membership(GameSpec(n, k), (0,) * n) is True


class TestOracleEquivalenceSmall:
    """Spot equivalence against the definitional recursive oracle; the
    full-height exhaustive runs live in the acceptance suite."""

    @pytest.mark.parametrize(
        "n,k,H",
        [(4, 2, 3), (5, 2, 2), (5, 3, 2), (6, 3, 2), (6, 4, 2), (8, 6, 1),
         (3, 1, 3), (2, 1, 3), (4, 4, 2), (5, 4, 2), (1, 1, 4)],
    )
    def test_matches_recursive_oracle(self, n, k, H):
        spec = GameSpec(n, k)
        memo = {}
        for pos in all_positions(n, H):
            assert membership(spec, pos) == recursive_outcome(spec, pos, memo), pos


class TestInvariants:
    @pytest.mark.parametrize("n,k,H", [(4, 2, 3), (5, 3, 2), (6, 4, 2), (8, 6, 1)])
    def test_condition_one_no_losing_option(self, n, k, H):
        spec = GameSpec(n, k)
        for pos in all_positions(n, H):
            if membership(spec, pos):
                assert not any(membership(spec, q) for q in options(spec, pos))

    @pytest.mark.parametrize("n,k", CHARACTERIZED)
    def test_symmetry_invariance(self, n, k):
        spec = GameSpec(n, k)
        for pos in all_positions(n, 2):
            value = membership(spec, pos)
            assert all(membership(spec, img) == value for img in dihedral_images(pos))

    @pytest.mark.parametrize("n,k", [(5, 2), (6, 3)])
    def test_translation_closure(self, n, k):
        spec = GameSpec(n, k)
        for pos in all_positions(n, 2):
            value = membership(spec, pos)
            for m in (1, 2, 5):
                assert membership(spec, translate(pos, m)) == value

    @given(st.tuples(*[st.integers(0, 30)] * 6))
    def test_cn63_third_pair_redundant(self, pos):
        a, b, c, d, e, f = pos
        if a + b == d + e and b + c == e + f:
            assert c + d == f + a

    def test_cn86_zeros_sit_between_maximal_stacks(self):
        spec = GameSpec(8, 6)
        for pos in all_positions(8, 3):
            if not membership(spec, pos) or max(pos) == 0:
                continue
            mx = max(pos)
            for i, h in enumerate(pos):
                if h == 0:
                    assert pos[(i - 1) % 8] == mx and pos[(i + 1) % 8] == mx, pos


class TestTwoMinimaForm:
    def test_doubled_triple(self):
        assert two_minima_form((1, 2, 3, 1, 2, 3)) == (1, 2, 3)

    def test_zeros(self):
        assert two_minima_form((0, 0, 0, 0, 0, 0)) == (0, 0, 0)

    def test_non_member_rejected(self):
        assert two_minima_form((0, 2, 0, 2, 1, 1)) is None

    def test_member_without_double_minimum(self):
        spec = GameSpec(6, 4)
        pos = (0, 3, 3, 0, 3, 3)  # losing, but minimum only in one triple?
        if membership(spec, pos):
            got = two_minima_form(pos)
            mn = min(pos)
            double = min(pos[0], pos[2], pos[4]) == mn == min(pos[1], pos[3], pos[5])
            assert (got is not None) == double

    def test_lemma_exhaustive_small(self):
        # every losing position with the minimum in both triples reads (a,b,c,a,b,c)
        spec = GameSpec(6, 4)
        for pos in all_positions(6, 3):
            if not membership(spec, pos):
                continue
            mn = min(pos)
            if min(pos[0], pos[2], pos[4]) == mn and min(pos[1], pos[3], pos[5]) == mn:
                assert pos[:3] == pos[3:], pos
                assert two_minima_form(pos) == pos[:3]

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            two_minima_form((1, 2, 3))


class TestTranslate:
    def test_up(self):
        assert translate((0, 5, 0, 3, 2), 1) == (1, 6, 1, 4, 3)

    def test_down(self):
        assert translate((1, 1, 1, 1), -1) == (0, 0, 0, 0)

    def test_negative_rejected(self):
        with pytest.raises(NegativeHeight):
            translate((0, 1), -1)
