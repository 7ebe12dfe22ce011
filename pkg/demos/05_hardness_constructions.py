"""Walkthrough: elections that secretly solve number partitioning.

Each generator turns a bag of positive integers (even sum) into an
election whose answer flips on whether the bag splits into two
equal-sum halves.  That is what makes these decision problems hard for
weighted votes, and it gives a sharp end-to-end test: the election
solvers must reproduce the subset-sum answer exactly.
"""

from votelab import (
    REDUCTION_KINDS,
    PartitionInstance,
    format_agenda,
    format_profile,
    gen_cup_elicitation,
    has_equal_partition,
    verify_reduction,
)

bag = PartitionInstance.parse("1,1,2")
print("bag:", bag.numbers, "splits evenly:", has_equal_partition(bag.numbers))

profile, agenda = gen_cup_elicitation(bag)
print("\ncup agenda:", format_agenda(agenda, profile.candidates))
print(format_profile(profile), end="")
# The partial ballots commit only A-above-C; where each one puts B is a
# free yes/no choice, one per bag number.  Elicitation stays open exactly
# when some choice subset hits half the bag total.

print()
for kind in REDUCTION_KINDS:
    report = verify_reduction(kind, bag)
    print(
        f"{kind:16} decision={str(report.decision):5}"
        f" partition={str(report.partition):5} holds={report.holds}"
    )

# A bag with no even split leaves nothing open and nothing manipulable.
lopsided = PartitionInstance.parse("1,3")
for kind in REDUCTION_KINDS:
    report = verify_reduction(kind, lopsided)
    assert report.holds
print("\nbag (1, 3) never splits; all four constructions agree")
