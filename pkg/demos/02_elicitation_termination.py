"""Walkthrough: deciding when preference elicitation can stop.

Votes arrive incrementally.  A partial ballot carries the pairwise
comparisons already revealed; unknown weight stands for agents who have
said nothing.  Elicitation is over once no completion of the missing
preferences can change the winner.
"""

from votelab import (
    Axis,
    PartialBallot,
    Profile,
    Stv,
    WeightedBallot,
    candidates_from_labels,
    coarse_elicitation_over,
    condorcet_winner_fixed,
    cup3_fine_over,
    cup_single_peaked_over,
    fine_elicitation_over,
    fine_sp_elicitation_over,
    plurality,
    possible_winners,
)

cands = candidates_from_labels("ABC")
a, b, c = (cand.id for cand in cands)


def labels(candidate_set):
    return " ".join(sorted(cand.label for cand in candidate_set))


# --- coarse model: whole ballots are either fully known or fully unknown
early = Profile(cands, (WeightedBallot((a, b, c), 4), WeightedBallot((b, a, c), 2)), unknown_weight=3)
print("coarse, 3 agents still silent:", coarse_elicitation_over(plurality(), early))
late = Profile(cands, (WeightedBallot((a, b, c), 7),), unknown_weight=2)
print("coarse, A already unbeatable: ", coarse_elicitation_over(plurality(), late))

# --- fine model: individual pairwise comparisons trickle in
partial = PartialBallot({(a, c), (b, c)}, weight=2)  # ranks C last, A-vs-B open
mixed = Profile(cands, (WeightedBallot((c, a, b), 3), partial, WeightedBallot((b, c, a), 2)))
print("who can still win:", labels(possible_winners(plurality(), mixed)))
print("fine elicitation over:", fine_elicitation_over(plurality(), mixed))

# With three candidates and a cup rule the same question needs no search.
agenda = ((a, b), c)
print("cup fine check (exact arithmetic):", cup3_fine_over(agenda, mixed))

# Is a Condorcet winner already forced, already impossible, or open?
status = condorcet_winner_fixed(mixed)
suffix = f" ({status.winner.label})" if status.winner else ""
print("condorcet status:", status.kind + suffix)

# --- single-peaked voters: an axis shrinks the completion space
axis = Axis((a, b, c))
sp = Profile(cands, (WeightedBallot((b, a, c), 2), WeightedBallot((b, c, a), 2), PartialBallot({(b, a)}, 1)))
print("single-peaked STV over:", fine_sp_elicitation_over(Stv(), sp, axis))

# For cup rules the single-peaked question reduces to locating the median
# voter's peak, so it can settle even when fixed majorities alone do not.
cands4 = candidates_from_labels("ABCD")
axis4 = Axis((0, 1, 2, 3))
deep = Profile(
    cands4,
    (
        WeightedBallot((0, 1, 2, 3), 2),
        WeightedBallot((3, 2, 1, 0), 2),
        PartialBallot({(1, 0), (1, 2)}, 1),
    ),
)
print("cup, single-peaked, any agenda:", cup_single_peaked_over(deep, axis4))
print("condorcet status without the axis:", condorcet_winner_fixed(deep).kind)
