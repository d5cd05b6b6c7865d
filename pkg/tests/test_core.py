import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circnim.core import (
    DihedralTransform,
    GameSpec,
    IllegalMove,
    Move,
    apply_move,
    canonicalize,
    dihedral_images,
    format_move,
    format_position,
    move_between,
    nim_sum,
    nim_zeroing_reduction,
    options,
    parse_move,
    parse_position,
)

positions = st.lists(st.integers(0, 6), min_size=1, max_size=8).map(tuple)


class TestGameSpec:
    def test_valid(self):
        spec = GameSpec(8, 3)
        assert spec.s == 5

    @pytest.mark.parametrize("n,k", [(0, 0), (3, 0), (3, 4), (-1, 1)])
    def test_invalid(self, n, k):
        with pytest.raises(ValueError):
            GameSpec(n, k)

    def test_windows_wrap_and_dedupe(self):
        assert GameSpec(4, 2).windows() == [(0, 1), (1, 2), (2, 3), (3, 0)]
        # k = n: all starts give the same stack set
        assert GameSpec(3, 3).windows() == [(0, 1, 2)]


class TestNimSum:
    def test_paper_example(self):
        assert nim_sum([3, 6, 14]) == 11

    def test_singleton_and_empty(self):
        assert nim_sum([5]) == 5
        assert nim_sum([]) == 0

    def test_self_inverse_pairs_exhaustive(self):
        # all pairs below 256
        a = np.arange(256)
        assert (a[:, None] ^ a[None, :] == a[None, :] ^ a[:, None]).all()
        assert (a ^ a == 0).all()
        assert (a ^ 0 == a).all()

    def test_associative_triples_exhaustive(self):
        b = np.arange(256, dtype=np.uint16)
        bc = b[:, None] ^ b[None, :]
        for a in range(256):
            assert ((a ^ b)[:, None] ^ b[None, :] == a ^ bc).all()


class TestNimZeroingReduction:
    def test_paper_values(self):
        assert nim_zeroing_reduction((3, 6, 14)) == (2, 5)
        assert nim_zeroing_reduction((1, 1)) is None
        assert nim_zeroing_reduction((7,)) == (0, 0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            nim_zeroing_reduction(())

    def test_bruteforce_small(self):
        # every sequence of length <= 4 with entries <= 16
        for length in range(1, 5):
            for values in itertools.product(range(1, 17), repeat=length):
                got = nim_zeroing_reduction(values)
                if nim_sum(values) == 0:
                    assert got is None
                else:
                    i, v = got
                    assert 0 <= v < values[i]
                    replaced = values[:i] + (v,) + values[i + 1 :]
                    assert nim_sum(replaced) == 0


class TestApplyMove:
    def test_paper_example(self):
        spec = GameSpec(4, 2)
        assert apply_move(spec, (3, 5, 4, 2), Move(2, (3, 1))) == (3, 2, 3, 2)

    def test_take_everything(self):
        assert apply_move(GameSpec(2, 2), (1, 0), Move(1, (1, 0))) == (0, 0)

    def test_zero_removal_rejected(self):
        with pytest.raises(IllegalMove):
            apply_move(GameSpec(4, 2), (3, 5, 4, 2), Move(1, (0, 0)))

    def test_overdraw_rejected(self):
        with pytest.raises(IllegalMove):
            apply_move(GameSpec(4, 2), (3, 5, 4, 2), Move(1, (4, 0)))

    def test_wrong_width_rejected(self):
        with pytest.raises(IllegalMove):
            apply_move(GameSpec(4, 2), (3, 5, 4, 2), Move(1, (1,)))

    def test_window_wraps(self):
        assert apply_move(GameSpec(4, 2), (3, 5, 4, 2), Move(4, (2, 3))) == (0, 5, 4, 0)

    @given(positions, st.data())
    def test_result_dominated_within_window(self, pos, data):
        n = len(pos)
        spec = GameSpec(n, data.draw(st.integers(1, n)))
        start = data.draw(st.integers(1, n))
        stacks = [(start - 1 + j) % n for j in range(spec.k)]
        removals = tuple(data.draw(st.integers(0, pos[i])) for i in stacks)
        if sum(removals) == 0:
            return
        result = apply_move(spec, pos, Move(start, removals))
        assert all(r <= p for r, p in zip(result, pos))
        changed = {i for i in range(n) if result[i] != pos[i]}
        assert changed and changed <= set(stacks)


class TestOptions:
    def test_trivial_cases(self):
        assert options(GameSpec(2, 2), (1, 0)) == {(0, 0)}
        assert options(GameSpec(4, 2), (0, 0, 0, 0)) == set()
        assert options(GameSpec(3, 1), (1, 1, 0)) == {(0, 1, 0), (1, 0, 0)}

    def test_count_single_window(self):
        # one window of the full board: all proper reductions
        assert len(options(GameSpec(2, 2), (2, 1))) == 3 * 2 - 1

    @given(st.lists(st.integers(0, 3), min_size=1, max_size=6).map(tuple))
    @settings(max_examples=40, deadline=None)
    def test_invariant_under_symmetry(self, pos):
        n = len(pos)
        spec = GameSpec(n, max(1, n // 2))
        base = {canonicalize(q)[0] for q in options(spec, pos)}
        for img in dihedral_images(pos):
            assert {canonicalize(q)[0] for q in options(spec, img)} == base


class TestCanonicalize:
    def test_two_stacks(self):
        assert canonicalize((2, 1))[0] == (1, 2)

    def test_constant_fixed(self):
        pos = (4, 4, 4)
        canon, t = canonicalize(pos)
        assert canon == pos
        assert t.apply(pos) == pos

    def test_figure_position(self):
        pos = (1, 3, 5, 4, 4, 2, 1, 6)
        # independent oracle: direct enumeration of all 16 images
        rots = [tuple(pos[(i + r) % 8] for i in range(8)) for r in range(8)]
        refl = [tuple(rev[(i + r) % 8] for i in range(8)) for rev in [pos[::-1]] for r in range(8)]
        expected = min(rots + refl)
        canon, t = canonicalize(pos)
        assert canon == expected
        assert t.apply(pos) == canon

    @given(positions)
    def test_idempotent(self, pos):
        canon, _ = canonicalize(pos)
        assert canonicalize(canon)[0] == canon

    @given(positions)
    def test_transform_achieves_minimum(self, pos):
        canon, t = canonicalize(pos)
        assert t.apply(pos) == canon
        assert all(canon <= img for img in dihedral_images(pos))


class TestDihedralTransform:
    def test_group_size(self):
        pos = (1, 2, 3, 4, 5)
        assert len(set(dihedral_images(pos))) == 10

    @given(positions, st.integers(0, 7), st.booleans())
    def test_inverse(self, pos, r, reflected):
        t = DihedralTransform(r % len(pos), reflected)
        assert t.inverse().apply(t.apply(pos)) == tuple(pos)


class TestMoveBetween:
    def test_finds_wrapping_window(self):
        spec = GameSpec(4, 2)
        move = move_between(spec, (3, 5, 4, 2), (1, 5, 4, 0))
        assert move is not None
        assert apply_move(spec, (3, 5, 4, 2), move) == (1, 5, 4, 0)

    def test_rejects_scattered_changes(self):
        assert move_between(GameSpec(4, 2), (1, 1, 1, 1), (0, 1, 0, 1)) is None

    def test_rejects_increase_and_identity(self):
        spec = GameSpec(3, 2)
        assert move_between(spec, (1, 1, 1), (2, 1, 1)) is None
        assert move_between(spec, (1, 1, 1), (1, 1, 1)) is None


class TestTextFormats:
    def test_position_round_trip(self):
        text = "(1,3,5,4,4,2,1,6)"
        assert format_position(parse_position(text)) == text
        assert parse_position(" ( 1 , 2 , 3 ) ") == (1, 2, 3)

    @pytest.mark.parametrize("bad", ["", "1,2,3", "(1,2", "(a,b)", "()", "(1,-2)"])
    def test_position_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_position(bad)

    def test_move_round_trip(self):
        move = Move(2, (3, 1))
        assert parse_move(format_move(move)) == move
        assert parse_move("start=2; take=3,1") == move

    @pytest.mark.parametrize("bad", ["", "start=2", "take=1", "start=x; take=1"])
    def test_move_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_move(bad)
