"""Ballot, profile and single-peakedness primitives."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votelab import (
    Axis,
    Candidate,
    CapExceeded,
    InvalidProfile,
    NotCompletableSP,
    PartialBallot,
    Profile,
    WeightedBallot,
    is_single_peaked,
    linear_extensions,
    majority_matrix,
    single_peaked_condorcet_winner,
    single_peaked_extensions,
    single_peaked_orders,
    sp_completable,
    transitive_closure,
)

from helpers import cands, vote

orders3 = st.permutations(range(3)).map(tuple)


class TestTransitiveClosure:
    def test_chain_implies_skip(self):
        assert (0, 2) in transitive_closure([(0, 1), (1, 2)])

    def test_closure_is_idempotent(self):
        once = transitive_closure([(0, 1), (1, 2), (2, 3)])
        assert transitive_closure(tuple(once)) == once

    def test_cycle_rejected(self):
        with pytest.raises(InvalidProfile):
            transitive_closure([(0, 1), (1, 2), (2, 0)])

    def test_self_pair_rejected(self):
        with pytest.raises(InvalidProfile):
            transitive_closure([(1, 1)])


class TestWeightedBallot:
    def test_pairs_of_full_order(self):
        assert WeightedBallot((0, 1, 2), 1).pairs() == frozenset(
            {(0, 1), (0, 2), (1, 2)}
        )

    def test_repeated_candidate_rejected(self):
        with pytest.raises(InvalidProfile):
            WeightedBallot((0, 0, 1), 1)

    @pytest.mark.parametrize("weight", [0, -2, 1.5, True])
    def test_bad_weight_rejected(self, weight):
        with pytest.raises(InvalidProfile):
            WeightedBallot((0, 1), weight)


class TestPartialBallot:
    def test_equality_is_on_the_closure(self):
        a = PartialBallot({(0, 1), (1, 2)}, 3)
        b = PartialBallot({(0, 1), (1, 2), (0, 2)}, 3)
        assert a == b
        assert hash(a) == hash(b)

    def test_locked_must_lie_in_closure(self):
        with pytest.raises(InvalidProfile):
            PartialBallot({(0, 1)}, 1, locked={(1, 2)})

    def test_locked_may_be_implied_rather_than_given(self):
        b = PartialBallot({(0, 1), (1, 2)}, 1, locked={(0, 2)})
        assert b.locked == frozenset({(0, 2)})

    def test_locked_only_erases_free_commitments(self):
        b = PartialBallot({(0, 1), (1, 2)}, 2, locked={(0, 1)})
        assert b.locked_only() == PartialBallot({(0, 1)}, 2, locked={(0, 1)})

    def test_is_total_and_to_order(self):
        b = PartialBallot.from_order((2, 0, 1), 1)
        assert b.is_total(3)
        assert b.to_order(3) == (2, 0, 1)
        assert not PartialBallot({(0, 1)}, 1).is_total(3)

    def test_to_order_refuses_partial(self):
        with pytest.raises(InvalidProfile):
            PartialBallot({(0, 1)}, 1).to_order(3)

    @given(orders3, st.integers(1, 9))
    def test_from_order_round_trips(self, order, w):
        assert PartialBallot.from_order(order, w).to_order(3) == order

    def test_from_order_locked_all(self):
        b = PartialBallot.from_order((1, 0), 1, locked_all=True)
        assert b.locked == b.pairs


class TestProfile:
    def test_total_weight_includes_unknown(self):
        p = Profile(cands(2), (vote((0, 1), 2),), unknown_weight=3)
        assert p.total_weight == 5
        assert p.m == 2

    def test_even_total_rejected_by_default(self):
        with pytest.raises(InvalidProfile, match="even"):
            Profile(cands(2), (vote((0, 1), 2),))

    def test_even_total_allowed_when_opted_out(self):
        p = Profile(cands(2), (vote((0, 1), 2),), strict_odd=False)
        assert p.total_weight == 2

    def test_candidate_ids_must_be_dense(self):
        with pytest.raises(InvalidProfile):
            Profile((Candidate(0, "A"), Candidate(2, "B")), (vote((0, 1), 1),))

    def test_labels_must_be_unique(self):
        with pytest.raises(InvalidProfile):
            Profile((Candidate(0, "A"), Candidate(1, "A")), (vote((0, 1), 1),))

    def test_ballot_must_rank_declared_candidates(self):
        with pytest.raises(InvalidProfile):
            Profile(cands(3), (vote((0, 1), 1),))

    def test_partial_must_stay_inside_universe(self):
        with pytest.raises(InvalidProfile):
            Profile(cands(2), (PartialBallot({(0, 2)}, 1),))

    def test_negative_unknown_rejected(self):
        with pytest.raises(InvalidProfile):
            Profile(cands(2), (vote((0, 1), 1),), unknown_weight=-1)

    def test_no_candidates_rejected(self):
        with pytest.raises(InvalidProfile):
            Profile(())

    def test_by_label_and_candidate(self):
        p = Profile(cands(3), (vote((0, 1, 2), 1),))
        assert p.by_label("B") == Candidate(1, "B")
        assert p.candidate(2).label == "C"
        with pytest.raises(InvalidProfile):
            p.by_label("Z")

    def test_is_complete_and_arrays(self):
        p = Profile(cands(2), (vote((1, 0), 3),))
        assert p.is_complete
        assert p.complete_arrays() == (((1, 0),), (3,))
        q = Profile(cands(2), (PartialBallot(frozenset(), 1),))
        assert not q.is_complete
        with pytest.raises(InvalidProfile):
            q.complete_arrays()

    def test_unknown_weight_alone_is_incomplete(self):
        p = Profile(cands(2), (vote((0, 1), 2),), unknown_weight=1)
        assert not p.is_complete


class TestMajorityMatrix:
    def test_fixed_free_partition_the_total(self):
        p = Profile(
            cands(3),
            (
                vote((0, 1, 2), 2),
                PartialBallot({(1, 2)}, 2),
            ),
            unknown_weight=1,
        )
        mm = majority_matrix(p)
        assert mm.total == 5
        assert mm.fixed[0][1] == 2 and mm.fixed[1][0] == 0
        assert mm.fixed[1][2] == 4  # complete ballot plus the committed pair
        assert mm.free[0][1] == 3
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert mm.fixed[i][j] + mm.fixed[j][i] + mm.free[i][j] == 5

    def test_forced_winner(self):
        p = Profile(cands(2), (vote((0, 1), 3),), unknown_weight=2)
        mm = majority_matrix(p)
        assert mm.forced_winner(0, 1) == 0
        assert mm.forced_winner(1, 0) == 0
        q = Profile(cands(2), (vote((0, 1), 2), vote((1, 0), 2)), unknown_weight=1)
        assert majority_matrix(q).forced_winner(0, 1) is None


class TestLinearExtensions:
    def test_extensions_of_one_pair(self):
        b = PartialBallot({(0, 2)}, 1)
        assert list(linear_extensions(b, 3)) == [(0, 1, 2), (0, 2, 1), (1, 0, 2)]

    def test_empty_ballot_gives_all_orders(self):
        b = PartialBallot(frozenset(), 1)
        assert len(list(linear_extensions(b, 3))) == 6

    def test_total_ballot_gives_one(self):
        b = PartialBallot.from_order((2, 1, 0), 1)
        assert list(linear_extensions(b, 3)) == [(2, 1, 0)]

    def test_cap_is_enforced(self):
        b = PartialBallot(frozenset(), 1)
        with pytest.raises(CapExceeded):
            list(linear_extensions(b, 3, cap=5))

    @given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=5))
    @settings(deadline=None)
    def test_every_extension_respects_every_pair(self, pairs):
        pairs = {(a, b) for a, b in pairs if a != b}
        try:
            ballot = PartialBallot(frozenset(pairs), 1)
        except InvalidProfile:
            return  # the random pairs formed a cycle
        for order in linear_extensions(ballot, 4):
            for a, b in ballot.pairs:
                assert order.index(a) < order.index(b)


class TestSinglePeaked:
    AXIS = Axis((0, 1, 2))

    def test_axis_must_be_a_permutation(self):
        with pytest.raises(InvalidProfile):
            Axis((0, 2))

    def test_is_single_peaked_examples(self):
        assert is_single_peaked((1, 0, 2), self.AXIS)
        assert is_single_peaked((0, 1, 2), self.AXIS)
        assert not is_single_peaked((0, 2, 1), self.AXIS)

    def test_order_count_is_two_to_the_m_minus_one(self):
        assert len(list(single_peaked_orders(self.AXIS))) == 4
        assert len(list(single_peaked_orders(Axis((0, 1, 2, 3))))) == 8

    def test_every_generated_order_is_single_peaked(self):
        axis = Axis((2, 0, 3, 1))
        for order in single_peaked_orders(axis):
            assert is_single_peaked(order, axis)

    def test_extensions_filter_to_the_axis(self):
        b = PartialBallot({(0, 2)}, 1)
        assert set(single_peaked_extensions(b, 3, self.AXIS)) == {
            (0, 1, 2),
            (1, 0, 2),
        }

    def test_sp_completable(self):
        assert sp_completable(PartialBallot(frozenset(), 1), 3, self.AXIS)
        # 0 above 2 above 1 forces the non-peaked order (0, 2, 1)
        assert not sp_completable(PartialBallot({(0, 2), (2, 1)}, 1), 3, self.AXIS)

    def test_median_peak_winner(self):
        p = Profile(
            cands(3),
            (vote((0, 1, 2), 2), vote((2, 1, 0), 2), vote((1, 2, 0), 1)),
        )
        assert single_peaked_condorcet_winner(p, self.AXIS).label == "B"

    def test_median_peak_needs_odd_total(self):
        p = Profile(cands(3), (vote((0, 1, 2), 2),), strict_odd=False)
        with pytest.raises(InvalidProfile):
            single_peaked_condorcet_winner(p, self.AXIS)

    def test_median_peak_rejects_non_peaked_ballot(self):
        p = Profile(cands(3), (vote((0, 2, 1), 1),))
        with pytest.raises(NotCompletableSP):
            single_peaked_condorcet_winner(p, self.AXIS)
