"""Joint-completion groups, assignment streams, and caps."""

import random

import pytest

from votelab import (
    Axis,
    CapExceeded,
    NotCompletableSP,
    PartialBallot,
    Profile,
    completion_groups,
    completed_profile,
    iter_assignments,
    space_size,
)
from votelab.completions import check_cap, completed_arrays

import helpers as H
from helpers import cands, vote


def election_key(profile):
    """A completion's identity: the multiset of (order, weight) pairs."""
    orders, weights = profile.complete_arrays()
    return tuple(sorted(zip(orders, weights)))


class TestGrouping:
    def test_identical_partials_merge(self):
        twin = PartialBallot({(0, 1)}, 2)
        p = Profile(cands(3), (twin, twin, vote((0, 1, 2), 1)))
        groups = completion_groups(p)
        assert len(groups) == 1
        assert groups[0].count == 2
        assert groups[0].weight == 2
        assert groups[0].indices == (0, 1)

    def test_unknown_pool_is_one_unit_group(self):
        p = Profile(cands(3), (vote((0, 1, 2), 1),), unknown_weight=2)
        groups = completion_groups(p)
        assert len(groups) == 1
        assert groups[0].weight == 1
        assert groups[0].count == 2
        assert groups[0].indices == ()
        assert len(groups[0].options) == 6

    def test_group_size_counts_multisets(self):
        twin = PartialBallot({(0, 2)}, 1)  # 3 extensions
        p = Profile(cands(3), (twin, twin, vote((0, 1, 2), 1)))
        (group,) = completion_groups(p)
        assert group.size == 6  # multisets of size 2 over 3 options
        assert space_size(completion_groups(p)) == 6

    def test_heavier_groups_come_first(self):
        p = Profile(
            cands(2),
            (PartialBallot(frozenset(), 1), PartialBallot(frozenset(), 2)),
        )
        weights = [g.weight for g in completion_groups(p)]
        assert weights == [2, 1]

    def test_complete_profile_has_no_groups(self):
        p = Profile(cands(2), (vote((0, 1), 3),))
        assert completion_groups(p) == ()


class TestAssignments:
    def test_multisets_enumerated_once(self):
        twin = PartialBallot({(0, 2)}, 1)
        p = Profile(cands(3), (twin, twin, vote((0, 1, 2), 1)))
        groups = completion_groups(p)
        seen = [election_key(completed_profile(p, groups, a)) for a in iter_assignments(groups)]
        assert len(seen) == 6
        assert len(set(seen)) == 6

    def test_stream_matches_per_ballot_product_up_to_relabeling(self):
        rng = random.Random(11)
        for _ in range(25):
            m = rng.randint(2, 3)
            ballots = [vote(H.rand_order(rng, m), rng.randint(1, 3))]
            for _ in range(rng.randint(0, 2)):
                ballots.append(H.rand_partial(rng, m, rng.randint(1, 2)))
            unknown = rng.randint(0, 2)
            p = Profile(
                cands(m),
                tuple(ballots),
                unknown_weight=unknown,
                strict_odd=False,
            )
            groups = completion_groups(p)
            merged = {
                election_key(completed_profile(p, groups, a))
                for a in iter_assignments(groups)
            }
            brute = {election_key(c) for c in H.iter_completions(p)}
            assert merged == brute

    def test_completed_profile_preserves_positions(self):
        partial = PartialBallot({(1, 0)}, 2)
        p = Profile(cands(2), (vote((0, 1), 2), partial), unknown_weight=1)
        groups = completion_groups(p)
        done = next(iter_assignments(groups))
        q = completed_profile(p, groups, done)
        assert q.ballots[0] == vote((0, 1), 2)
        assert q.ballots[1].weight == 2
        assert q.ballots[1].order == (1, 0)
        assert q.ballots[2].weight == 1  # the unknown unit lands at the end
        assert q.unknown_weight == 0
        assert q.total_weight == p.total_weight

    def test_completed_arrays_agree_with_completed_profile(self):
        p = Profile(
            cands(3),
            (vote((2, 1, 0), 1), PartialBallot({(0, 1)}, 2)),
        )
        groups = completion_groups(p)
        for assignment in iter_assignments(groups):
            orders, weights = completed_arrays(p, groups, assignment)
            q = completed_profile(p, groups, assignment)
            assert sorted(zip(orders, weights)) == sorted(
                zip(*q.complete_arrays())
            )


class TestLockedView:
    def test_locked_only_widens_the_options(self):
        b = PartialBallot({(0, 1), (1, 2)}, 1, locked={(0, 1)})
        p = Profile(cands(3), (b,))
        (committed,) = completion_groups(p)
        (free,) = completion_groups(p, locked_only=True)
        assert set(committed.options) == {(0, 1, 2)}
        assert set(free.options) == {(0, 1, 2), (0, 2, 1), (2, 0, 1)}

    def test_complete_ballots_stay_fixed(self):
        p = Profile(cands(2), (vote((1, 0), 1),))
        assert completion_groups(p, locked_only=True) == ()


class TestAxis:
    def test_options_restricted_to_single_peaked(self):
        axis = Axis((0, 1, 2))
        b = PartialBallot({(0, 2)}, 1)
        p = Profile(cands(3), (b,))
        (group,) = completion_groups(p, axis=axis)
        assert set(group.options) == {(0, 1, 2), (1, 0, 2)}

    def test_unknown_pool_uses_single_peaked_orders(self):
        axis = Axis((0, 1, 2))
        p = Profile(cands(3), (vote((0, 1, 2), 2),), unknown_weight=1)
        (group,) = completion_groups(p, axis=axis)
        assert len(group.options) == 4

    def test_uncompletable_partial_raises(self):
        axis = Axis((0, 1, 2))
        b = PartialBallot({(0, 2), (2, 1)}, 1)
        with pytest.raises(NotCompletableSP):
            completion_groups(Profile(cands(3), (b,)), axis=axis)

    def test_non_peaked_complete_ballot_raises(self):
        axis = Axis((0, 1, 2))
        p = Profile(cands(3), (vote((0, 2, 1), 1),))
        with pytest.raises(NotCompletableSP):
            completion_groups(p, axis=axis)


class TestCaps:
    def test_check_cap_passes_exact_size_through(self):
        p = Profile(cands(3), (PartialBallot(frozenset(), 1),))
        groups = completion_groups(p)
        assert check_cap(groups, 6) == 6

    def test_check_cap_raises_with_estimate(self):
        p = Profile(cands(3), (PartialBallot(frozenset(), 1),), unknown_weight=2)
        groups = completion_groups(p)
        with pytest.raises(CapExceeded) as exc:
            check_cap(groups, 100)
        assert exc.value.estimate == 6 * 21  # 6 extensions x C(6+2-1, 2)

    def test_per_ballot_option_cap(self):
        p = Profile(cands(4), (PartialBallot(frozenset(), 1),))
        with pytest.raises(CapExceeded):
            completion_groups(p, cap=10)
