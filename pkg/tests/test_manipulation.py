"""Coalition and preference manipulation searches."""

import random

import pytest

from votelab import (
    Copeland,
    Cup,
    InvalidInstance,
    ManipulationInstance,
    ModelMismatch,
    PartialBallot,
    Profile,
    Stv,
    TieBreak,
    WeightedBallot,
    coalition_manipulate,
    condorcet_coalition_manipulate,
    plurality,
    preference_manipulate,
    winner,
)

import helpers as H
from helpers import cands, vote


def replay_coalition(inst, assignment):
    ballots = list(inst.profile.ballots)
    for idx, order in assignment.items():
        ballots[idx] = WeightedBallot(order, inst.profile.ballots[idx].weight)
    return Profile(
        candidates=inst.profile.candidates,
        ballots=tuple(ballots),
        strict_odd=inst.profile.strict_odd,
    )


class TestInstanceValidation:
    def test_int_target_is_normalized(self):
        p = Profile(cands(2), (vote((0, 1), 1),))
        inst = ManipulationInstance(plurality(), 1, p)
        assert inst.target == p.candidates[1]
        assert not inst.is_coalition

    def test_foreign_target_rejected(self):
        from votelab import Candidate

        p = Profile(cands(2), (vote((0, 1), 1),))
        with pytest.raises(InvalidInstance):
            ManipulationInstance(plurality(), Candidate(5, "Z"), p)

    def test_coalition_indices_checked(self):
        p = Profile(cands(2), (vote((0, 1), 1),))
        with pytest.raises(InvalidInstance):
            ManipulationInstance(plurality(), 0, p, coalition=frozenset({3}))

    def test_locked_coalition_ballot_rejected(self):
        locked = PartialBallot({(0, 1)}, 1, locked={(0, 1)})
        p = Profile(cands(2), (locked, vote((0, 1), 2)))
        with pytest.raises(InvalidInstance):
            ManipulationInstance(plurality(), 0, p, coalition=frozenset({0}))

    def test_model_mismatch_is_raised_crosswise(self):
        p = Profile(cands(2), (vote((0, 1), 1),))
        pref = ManipulationInstance(plurality(), 0, p)
        coal = ManipulationInstance(plurality(), 0, p, coalition=frozenset({0}))
        with pytest.raises(ModelMismatch):
            coalition_manipulate(pref)
        with pytest.raises(ModelMismatch):
            preference_manipulate(coal)

    def test_coalition_needs_fully_known_others(self):
        p = Profile(cands(2), (vote((0, 1), 2),), unknown_weight=1)
        inst = ManipulationInstance(plurality(), 0, p, coalition=frozenset())
        with pytest.raises(ModelMismatch):
            coalition_manipulate(inst)
        q = Profile(cands(2), (PartialBallot(frozenset(), 1), vote((0, 1), 2)))
        inst2 = ManipulationInstance(plurality(), 0, q, coalition=frozenset({1}))
        with pytest.raises(ModelMismatch):
            coalition_manipulate(inst2)


class TestCupCoalition:
    AGENDA = ((0, 1), 2)

    def test_semifinal_win_is_not_enough(self):
        # the coalition can push A through the semifinal but not past C
        p = Profile(
            cands(3),
            (vote((2, 0, 1), 3), vote((1, 2, 0), 3), vote((0, 1, 2), 1)),
        )
        inst = ManipulationInstance(Cup(self.AGENDA), 0, p, coalition=frozenset({2}))
        assert coalition_manipulate(inst) is None

    def test_heavier_coalition_succeeds(self):
        # 4 of the 7 votes are free, enough for both of A's contests
        p = Profile(
            cands(3),
            (vote((2, 0, 1), 2), vote((1, 2, 0), 1), vote((0, 1, 2), 4)),
        )
        inst = ManipulationInstance(Cup(self.AGENDA), 0, p, coalition=frozenset({2}))
        assignment = coalition_manipulate(inst)
        assert assignment is not None
        replay = replay_coalition(inst, assignment)
        assert winner(inst.rule, replay, TieBreak.favor(0)).label == "A"

    def test_agrees_with_brute_force(self):
        rng = random.Random(83)
        for _ in range(120):
            m = rng.randint(2, 4)
            n = rng.randint(2, 4)
            ballots = tuple(
                vote(H.rand_order(rng, m), rng.randint(1, 3)) for _ in range(n)
            )
            p = Profile(cands(m), ballots, strict_odd=False)
            coalition = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
            target = rng.randrange(m)
            agenda = H.rand_agenda(rng, range(m))
            inst = ManipulationInstance(Cup(agenda), target, p, coalition=coalition)
            assignment = coalition_manipulate(inst)
            expected = H.brute_coalition_possible(Cup(agenda), p, coalition, target)
            assert (assignment is not None) == expected
            if assignment is not None:
                replay = replay_coalition(inst, assignment)
                assert winner(inst.rule, replay, TieBreak.favor(target)).id == target


class TestGenericCoalition:
    def test_plurality_witness(self):
        p = Profile(
            cands(3),
            (vote((1, 0, 2), 3), vote((2, 1, 0), 2), vote((0, 2, 1), 2)),
        )
        inst = ManipulationInstance(plurality(), 2, p, coalition=frozenset({2}))
        assignment = coalition_manipulate(inst)
        assert assignment is not None
        assert assignment[2][0] == 2  # the coalition tops the target
        replay = replay_coalition(inst, assignment)
        assert winner(plurality(), replay, TieBreak.favor(2)).label == "C"

    def test_impossible_when_too_light(self):
        p = Profile(cands(2), (vote((0, 1), 5), vote((1, 0), 2)))
        inst = ManipulationInstance(plurality(), 1, p, coalition=frozenset({1}))
        assert coalition_manipulate(inst) is None

    def test_agrees_with_brute_force(self):
        rng = random.Random(89)
        for _ in range(100):
            m = rng.randint(2, 3)
            n = rng.randint(2, 4)
            ballots = tuple(
                vote(H.rand_order(rng, m), rng.randint(1, 3)) for _ in range(n)
            )
            p = Profile(cands(m), ballots, strict_odd=False)
            coalition = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
            target = rng.randrange(m)
            rule = rng.choice((plurality(), Copeland(), Stv()))
            inst = ManipulationInstance(rule, target, p, coalition=coalition)
            assignment = coalition_manipulate(inst)
            expected = H.brute_coalition_possible(rule, p, coalition, target)
            assert (assignment is not None) == expected
            if assignment is not None:
                replay = replay_coalition(inst, assignment)
                assert winner(rule, replay, TieBreak.favor(target)).id == target


class TestCondorcetCoalition:
    def test_pinned_success(self):
        p = Profile(
            cands(3),
            (vote((1, 0, 2), 3), vote((2, 0, 1), 2), vote((0, 1, 2), 4)),
        )
        inst = ManipulationInstance(Copeland(), 0, p, coalition=frozenset({2}))
        assignment = condorcet_coalition_manipulate(inst)
        assert assignment == {2: (0, 1, 2)}
        replay = replay_coalition(inst, assignment)
        assert H.condorcet_of(replay) == 0

    def test_pinned_failure(self):
        # even topping A everywhere leaves A at half against B
        p = Profile(
            cands(3),
            (vote((1, 0, 2), 4), vote((2, 1, 0), 2), vote((0, 1, 2), 3)),
        )
        inst = ManipulationInstance(Copeland(), 0, p, coalition=frozenset({2}))
        assert condorcet_coalition_manipulate(inst) is None

    def test_agrees_with_brute_force(self):
        rng = random.Random(97)
        hits = 0
        for _ in range(120):
            m = rng.randint(2, 4)
            n = rng.randint(2, 4)
            ballots = tuple(
                vote(H.rand_order(rng, m), rng.randint(1, 3)) for _ in range(n)
            )
            p = Profile(cands(m), ballots, strict_odd=False)
            coalition = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
            target = rng.randrange(m)
            inst = ManipulationInstance(Copeland(), target, p, coalition=coalition)
            assignment = condorcet_coalition_manipulate(inst)
            expected = H.brute_condorcet_coalition_possible(p, coalition, target)
            assert (assignment is not None) == expected
            if assignment is not None:
                hits += 1
                replay = replay_coalition(inst, assignment)
                assert H.condorcet_of(replay) == target
        assert hits > 0


class TestPreference:
    AGENDA = ((0, 1), 2)

    def test_unlocked_pairs_may_be_reversed(self):
        # the sincere completion elects A; flipping the free pair elects B
        committed = PartialBallot.from_order((0, 1), 3)  # nothing locked
        p = Profile(cands(2), (committed, vote((1, 0), 2)))
        inst = ManipulationInstance(plurality(), 1, p)
        witness = preference_manipulate(inst)
        assert witness is not None
        assert winner(plurality(), witness, TieBreak.favor(1)).label == "B"

    def test_locked_pairs_are_immovable(self):
        locked = PartialBallot.from_order((0, 1), 3, locked_all=True)
        p = Profile(cands(2), (locked, vote((1, 0), 2)))
        inst = ManipulationInstance(plurality(), 1, p)
        assert preference_manipulate(inst) is None

    def test_witness_extends_every_locked_pair(self):
        rng = random.Random(101)
        checked = 0
        for _ in range(120):
            m = rng.randint(2, 3)
            ballots = []
            for _ in range(rng.randint(1, 3)):
                if rng.random() < 0.5:
                    ballots.append(vote(H.rand_order(rng, m), rng.randint(1, 3)))
                else:
                    ballots.append(H.rand_partial(rng, m, rng.randint(1, 3), lock=True))
            p = Profile(cands(m), tuple(ballots), strict_odd=False)
            target = rng.randrange(m)
            rule = rng.choice((plurality(), Stv(), Cup(H.rand_agenda(rng, range(m)))))
            inst = ManipulationInstance(rule, target, p)
            witness = preference_manipulate(inst)
            expected = H.brute_preference_possible(rule, p, target)
            assert (witness is not None) == expected
            if witness is None:
                continue
            checked += 1
            assert winner(rule, witness, TieBreak.favor(target)).id == target
            assert witness.total_weight == p.total_weight
            for original, rewritten in zip(p.ballots, witness.ballots):
                assert rewritten.weight == original.weight
                if isinstance(original, PartialBallot):
                    written = WeightedBallot(rewritten.order, 1).pairs()
                    assert original.locked <= written
                else:
                    assert rewritten == original
        assert checked > 0

    def test_unknown_weight_counts_as_free_agents(self):
        p = Profile(cands(2), (vote((0, 1), 1),), unknown_weight=2)
        inst = ManipulationInstance(plurality(), 1, p)
        witness = preference_manipulate(inst)
        assert witness is not None
        assert winner(plurality(), witness, TieBreak.favor(1)).label == "B"
