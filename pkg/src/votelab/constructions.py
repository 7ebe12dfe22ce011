"""Bag-splitting generators: elections whose answers encode number partitioning.

Each generator maps a bag of positive integers with an even total to an
election question.  The weights are arranged so the undecided voters can
force a second outcome exactly when the bag has an equal-sum split.
``verify_reduction`` replays a generated instance against an independent
brute-force partition check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .completions import DEFAULT_COMPLETION_CAP
from .elicitation import fine_elicitation_over, fine_sp_elicitation_over
from .errors import InvalidInstance
from .manipulation import ManipulationInstance, preference_manipulate
from .profiles import (
    Axis,
    PartialBallot,
    Profile,
    WeightedBallot,
    candidates_from_labels,
)
from .rules import Agenda, Copeland, Cup, Stv

REDUCTION_KINDS = ("cup-elicit", "stv-sp-elicit", "cup-manip", "copeland-manip")


@dataclass(frozen=True)
class PartitionInstance:
    """A bag of positive integers with an even total, stored sorted.

    The first number in sorted order plays the distinguished role in the
    cup generator, so sorting also makes generation deterministic.
    """

    numbers: tuple[int, ...]

    def __post_init__(self) -> None:
        numbers = tuple(sorted(self.numbers))
        if not numbers:
            raise InvalidInstance("the bag must contain at least one number")
        for v in numbers:
            if not isinstance(v, int) or v <= 0:
                raise InvalidInstance(f"bag entries must be positive integers, got {v!r}")
        if sum(numbers) % 2:
            raise InvalidInstance("the bag total must be even")
        object.__setattr__(self, "numbers", numbers)

    @classmethod
    def parse(cls, text: str) -> "PartitionInstance":
        """Parse a comma-separated bag such as ``"1,1,2"``."""
        parts = [piece.strip() for piece in text.split(",") if piece.strip()]
        if not parts:
            raise InvalidInstance("empty bag")
        try:
            values = tuple(int(piece) for piece in parts)
        except ValueError as exc:
            raise InvalidInstance(f"bad bag entry in {text!r}") from exc
        return cls(values)

    @property
    def half_sum(self) -> int:
        return sum(self.numbers) // 2


def has_equal_partition(numbers: Sequence[int]) -> bool:
    """Equal-sum split decided by trying every subset.

    Deliberately naive; this is the referee the generated elections are
    checked against.
    """
    total = sum(numbers)
    if total % 2:
        return False
    half = total // 2
    items = tuple(numbers)
    return any(
        sum(combo) == half
        for r in range(len(items) + 1)
        for combo in combinations(items, r)
    )


def has_equal_partition_dp(numbers: Sequence[int]) -> bool:
    """Equal-sum split by bitset subset-sum, pseudo-polynomial in the total."""
    total = sum(numbers)
    if total % 2:
        return False
    bits = 1
    for v in numbers:
        bits |= bits << v
    return bool(bits >> (total // 2) & 1)


def gen_cup_elicitation(
    p: PartitionInstance, *, balanced: bool = False
) -> tuple[Profile, Agenda]:
    """A cup election that stays undecided exactly when the bag splits evenly.

    Candidates A,B,C,D meet on the agenda (((A,B),C),D).  Four fixed blocs
    pin every contest except A-vs-C inside the semifinal path; the bag
    numbers become partial ballots (weight twice the number) committed only
    to A above C, so their B placements act as a free subset choice.

    With ``balanced`` a fifth candidate E is appended at the bottom of every
    ballot and paired against D, which evens out the agenda depths without
    touching the outcome structure.
    """
    k = p.half_sum
    first, rest = p.numbers[0], p.numbers[1:]
    a, b, c, d, e = range(5)

    def order(*ids: int) -> tuple[int, ...]:
        return ids + (e,) if balanced else ids

    ballots: list[WeightedBallot | PartialBallot] = [
        WeightedBallot(order(c, d, b, a), 1),
        WeightedBallot(order(c, d, a, b), 2 * k - 1),
        WeightedBallot(order(d, b, c, a), 2 * k - 1),
        WeightedBallot(order(d, b, a, c), 2 * first),
    ]
    for v in rest:
        pairs = {(a, c)}
        if balanced:
            pairs |= {(x, e) for x in (a, b, c, d)}
        ballots.append(PartialBallot(pairs, 2 * v))

    labels = "ABCDE" if balanced else "ABCD"
    profile = Profile(candidates_from_labels(labels), tuple(ballots))
    assert profile.total_weight == 8 * k - 1
    agenda: Agenda = (((a, b), c), (d, e)) if balanced else (((a, b), c), d)
    return profile, agenda


def gen_stv_sp_elicitation(p: PartitionInstance) -> tuple[Profile, Axis]:
    """An STV election on a three-candidate axis, undecided iff the bag splits.

    Fixed blocs give the middle candidate B a slight first-place lead over
    the flanks A and C.  Each bag number becomes an empty partial ballot of
    weight twice the number, free to land anywhere single-peaked; only an
    exactly even split of that weight between the flanks changes who is
    eliminated first.
    """
    k = p.half_sum
    a, b, c = range(3)
    ballots: list[WeightedBallot | PartialBallot] = [
        WeightedBallot((b, c, a), 6 * k - 1),
        WeightedBallot((a, b, c), 4 * k),
        WeightedBallot((c, b, a), 4 * k),
    ]
    ballots += [PartialBallot(frozenset(), 2 * v) for v in p.numbers]
    profile = Profile(candidates_from_labels("ABC"), tuple(ballots))
    assert profile.total_weight == 18 * k - 1
    return profile, Axis((a, b, c))


def gen_cup_preference_manipulation(p: PartitionInstance) -> ManipulationInstance:
    """A cup instance solvable for the target exactly when the bag splits.

    Agenda ((A,B),C) with target C.  Three fixed blocs make C beat whichever
    semifinal winner is not helped by the manipulators; each bag number
    contributes a manipulable ballot (weight twice the number) locked only
    to A above C, free to place B on either side.
    """
    k = p.half_sum
    a, b, c = range(3)
    ballots: list[WeightedBallot | PartialBallot] = [
        WeightedBallot((c, b, a), 1),
        WeightedBallot((c, a, b), 2 * k - 1),
        WeightedBallot((b, c, a), 2 * k - 1),
    ]
    ballots += [PartialBallot({(a, c)}, 2 * v, locked={(a, c)}) for v in p.numbers]
    profile = Profile(candidates_from_labels("ABC"), tuple(ballots))
    assert profile.total_weight == 8 * k - 1
    return ManipulationInstance(Cup(((a, b), c)), c, profile)


def gen_copeland_preference_manipulation(p: PartitionInstance) -> ManipulationInstance:
    """A Copeland instance solvable for the target iff the bag splits evenly.

    Two fixed blocs of weight k rank the target C first, and every
    manipulable ballot is locked to both A and B above C, so C can do no
    better than tie each rival.  The free A-vs-B choices carry the bag
    numbers as weights: only an equal split produces the all-ties score
    sheet in which C shares the top score and takes the tie-break.

    The total weight is even by design, so strict odd-total validation is
    switched off for this profile.
    """
    k = p.half_sum
    a, b, c = range(3)
    ballots: list[WeightedBallot | PartialBallot] = [
        WeightedBallot((c, a, b), k),
        WeightedBallot((c, b, a), k),
    ]
    ballots += [
        PartialBallot({(a, c), (b, c)}, v, locked={(a, c), (b, c)})
        for v in p.numbers
    ]
    profile = Profile(candidates_from_labels("ABC"), tuple(ballots), strict_odd=False)
    assert profile.total_weight == 4 * k
    return ManipulationInstance(Copeland(), c, profile)


@dataclass(frozen=True)
class ReductionReport:
    """Both sides of one generated instance, and whether they line up.

    ``decision`` is the election procedure's answer (elicitation over, or
    manipulation solvable); ``partition`` is the brute-force bag answer;
    ``holds`` records the expected linkage between the two.
    """

    kind: str
    numbers: tuple[int, ...]
    decision: bool
    partition: bool
    holds: bool


def verify_reduction(
    kind: str,
    p: PartitionInstance,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
) -> ReductionReport:
    """Run one generated instance and check it tracks the bag-split answer.

    Elicitation kinds must come out *not* over exactly when the bag splits;
    manipulation kinds must come out solvable exactly when it does.
    """
    partition = has_equal_partition(p.numbers)
    if kind == "cup-elicit":
        profile, agenda = gen_cup_elicitation(p)
        decision = fine_elicitation_over(Cup(agenda), profile, cap=cap)
        holds = (not decision) == partition
    elif kind == "stv-sp-elicit":
        profile, axis = gen_stv_sp_elicitation(p)
        decision = fine_sp_elicitation_over(Stv(), profile, axis, cap=cap)
        holds = (not decision) == partition
    elif kind == "cup-manip":
        witness = preference_manipulate(gen_cup_preference_manipulation(p), cap=cap)
        decision = witness is not None
        holds = decision == partition
    elif kind == "copeland-manip":
        witness = preference_manipulate(gen_copeland_preference_manipulation(p), cap=cap)
        decision = witness is not None
        holds = decision == partition
    else:
        raise InvalidInstance(
            f"unknown reduction kind {kind!r}; expected one of {', '.join(REDUCTION_KINDS)}"
        )
    return ReductionReport(kind, p.numbers, decision, partition, holds)
