"""Walkthrough: can strategic agents force their candidate through?

Two flavours.  A coalition manipulation fixes everyone else's complete
votes and asks whether some orders for the coalition elect the target.
A preference manipulation starts from partial ballots whose locked pairs
are already public and asks whether the still-free pairs can be written
to elect the target.
"""

from votelab import (
    Copeland,
    Cup,
    ManipulationInstance,
    PartialBallot,
    Profile,
    WeightedBallot,
    candidates_from_labels,
    coalition_manipulate,
    condorcet_coalition_manipulate,
    format_profile,
    plurality,
    preference_manipulate,
    winner,
    TieBreak,
)

cands = candidates_from_labels("ABC")
a, b, c = (cand.id for cand in cands)

# --- coalition: ballot #2 (weight 4) colludes for C under a cup rule
profile = Profile(
    cands,
    (
        WeightedBallot((a, b, c), 3),
        WeightedBallot((c, b, a), 2),
        WeightedBallot((a, b, c), 4),  # the coalition's sincere vote
    ),
)
inst = ManipulationInstance(Cup(((a, b), c)), c, profile, coalition=frozenset({2}))
orders = coalition_manipulate(inst)
print("cup coalition finds orders:", orders)
if orders is not None:
    ballots = list(profile.ballots)
    for idx, order in orders.items():
        ballots[idx] = WeightedBallot(order, ballots[idx].weight)
    replay = Profile(cands, tuple(ballots))
    print("replayed winner:", winner(inst.rule, replay, TieBreak.favor(c)).label)

# Making the target a Condorcet winner has its own one-pass solver.
orders = condorcet_coalition_manipulate(
    ManipulationInstance(Copeland(), b, profile, coalition=frozenset({2}))
)
print("condorcet coalition for B:", orders)

# --- preference model: only unlocked pairs may still be written
committed = PartialBallot({(b, a), (b, c)}, weight=3, locked={(b, c)})
open_race = Profile(cands, (WeightedBallot((a, c, b), 2), committed))
witness = preference_manipulate(ManipulationInstance(plurality(), a, open_race))
print("can A still be elected?", witness is not None)
if witness is not None:
    print(format_profile(witness), end="")  # B>A was free; B>C stays locked
