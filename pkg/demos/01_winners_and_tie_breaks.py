"""Walkthrough: declaring weighted profiles and asking who wins.

A weight-k ballot stands for k agents voting identically, so every rule
works on (order, weight) pairs and never expands them.  Run this file
directly; it prints each step.
"""

from votelab import (
    Copeland,
    Cup,
    Profile,
    TieBreak,
    WeightedBallot,
    borda,
    candidates_from_labels,
    plurality,
    winner,
)

cands = candidates_from_labels("ABC")
a, b, c = (cand.id for cand in cands)

# Three blocs: 3 agents with A>B>C, 2 with B>C>A, 2 with C>B>A.
profile = Profile(
    cands,
    (
        WeightedBallot((a, b, c), 3),
        WeightedBallot((b, c, a), 2),
        WeightedBallot((c, b, a), 2),
    ),
)
print(f"total weight {profile.total_weight} (odd totals avoid pairwise ties)")

print("plurality:", winner(plurality(), profile).label)  # A tops most ballots
print("borda:    ", winner(borda(), profile).label)      # B is everyone's fallback
print("copeland: ", winner(Copeland(), profile).label)   # B beats both rivals head to head

# A cup rule is a knockout bracket written as a nested pair tree.
semifinal_then_final = Cup(((a, b), c))
print("cup (A,B) then C:", winner(semifinal_then_final, profile).label)

# Perfectly cyclic majorities leave every candidate achievable; the
# tie-break then decides.  lex picks the lowest id, favor/against steer it.
cycle = Profile(
    cands,
    (
        WeightedBallot((a, b, c), 1),
        WeightedBallot((b, c, a), 1),
        WeightedBallot((c, a, b), 1),
    ),
)
for tb in (TieBreak.lex(), TieBreak.favor(c), TieBreak.against(a)):
    print(f"copeland on a cycle with {tb.kind}: {winner(Copeland(), cycle, tb).label}")
