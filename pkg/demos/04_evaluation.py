"""Walkthrough: exact win probabilities over uncertain electorates.

A scenario distribution lists complete profiles with exact rational
probabilities.  Everything stays in Fractions, so thresholds compare
exactly and no sampling noise appears.
"""

from fractions import Fraction

from votelab import (
    EvaluationQuery,
    Profile,
    ScenarioDistribution,
    TieBreak,
    WeightedBallot,
    candidates_from_labels,
    evaluate,
    plurality,
    product_distribution,
    win_probability,
)

cands = candidates_from_labels("AB")
a, b = (cand.id for cand in cands)

# Hand-built: one poll says A leads, a less likely one says B does.
lead_a = Profile(cands, (WeightedBallot((a, b), 2), WeightedBallot((b, a), 1)))
lead_b = Profile(cands, (WeightedBallot((b, a), 2), WeightedBallot((a, b), 1)))
dist = ScenarioDistribution(((lead_a, Fraction(2, 3)), (lead_b, Fraction(1, 3))))

p = win_probability(dist, plurality(), a)
print("P[A wins] =", p)
print("exceeds 1/2:", evaluate(dist, EvaluationQuery(a, Fraction(1, 2), plurality())))
print("exceeds 2/3:", evaluate(dist, EvaluationQuery(a, Fraction(2, 3), plurality())))  # strict

# Independent agents: each row is (weight, [(order, probability), ...]).
# The product over agents becomes one scenario per joint draw.
swing = product_distribution(
    cands,
    [
        (2, [((a, b), Fraction(1, 2)), ((b, a), Fraction(1, 2))]),
        (1, [((a, b), Fraction(3, 4)), ((b, a), Fraction(1, 4))]),
    ],
)
print("scenarios:", len(swing.scenarios))
print("P[B wins] with a favourable tie-break:", win_probability(swing, plurality(), b, TieBreak.favor(b)))
