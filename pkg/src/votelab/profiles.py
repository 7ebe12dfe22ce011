"""Core data model: candidates, ballots, profiles, and pairwise tallies.

Candidates are identified by dense integer ids; ballots reference ids only.
A profile mixes three kinds of voter mass:

* complete weighted ballots (a weight-k ballot is k agents voting alike),
* partial ballots, each a consistent set of pairwise commitments whose
  whole weight completes to a single linear extension,
* ``unknown_weight``, the total weight of agents about whom nothing is
  known; each unit of it may independently cast any total order.

All structures are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .errors import CapExceeded, InvalidProfile, NotCompletableSP

#: Default bound on the number of completions any enumeration may visit.
DEFAULT_COMPLETION_CAP = 10**6

#: Weights must fit in a signed 64-bit integer.
MAX_WEIGHT = 2**63 - 1

Pair = tuple[int, int]


@dataclass(frozen=True)
class Candidate:
    """A candidate: dense id plus display label."""

    id: int
    label: str


@dataclass(frozen=True)
class Axis:
    """A left-to-right ordering of all candidate ids for single-peakedness."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.order))):
            raise InvalidProfile(f"axis must order candidate ids 0..{len(self.order) - 1}")

    def position(self, cand: int) -> int:
        return self.order.index(cand)


def _check_weight(weight: int) -> None:
    if not isinstance(weight, int) or isinstance(weight, bool):
        raise InvalidProfile(f"weight must be an integer, got {weight!r}")
    if weight < 1:
        raise InvalidProfile(f"weight must be positive, got {weight}")
    if weight > MAX_WEIGHT:
        raise InvalidProfile(f"weight {weight} exceeds the 64-bit bound")


def transitive_closure(pairs: Sequence[Pair]) -> frozenset[Pair]:
    """Transitive closure of a set of (preferred, other) pairs.

    Raises:
        InvalidProfile: if the pairs imply a preference cycle.
    """
    succ: dict[int, set[int]] = {}
    for a, b in pairs:
        if a == b:
            raise InvalidProfile(f"pair ({a},{b}) relates a candidate to itself")
        succ.setdefault(a, set()).add(b)
    closure: set[Pair] = set()
    for start in succ:
        seen: set[int] = set()
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in succ.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if start in seen:
            raise InvalidProfile("pairwise commitments contain a cycle")
        closure.update((start, b) for b in seen)
    return frozenset(closure)


@dataclass(frozen=True)
class WeightedBallot:
    """A complete strict ranking cast with integer weight."""

    order: tuple[int, ...]
    weight: int

    def __post_init__(self) -> None:
        _check_weight(self.weight)
        if len(set(self.order)) != len(self.order):
            raise InvalidProfile(f"ballot order {self.order} repeats a candidate")

    def pairs(self) -> frozenset[Pair]:
        """All pairwise commitments implied by the ranking."""
        o = self.order
        return frozenset((o[i], o[j]) for i in range(len(o)) for j in range(i + 1, len(o)))


class PartialBallot:
    """A consistent set of pairwise commitments with weight.

    The constructor stores the transitive closure of the given pairs, so two
    ballots with the same implied preferences compare equal regardless of
    which generating pairs were supplied.  ``locked`` marks the immutable
    subset used by the preference-manipulation model; it must be contained
    in the closure.
    """

    __slots__ = ("pairs", "weight", "locked")

    def __init__(
        self,
        pairs: Sequence[Pair] | frozenset[Pair],
        weight: int,
        locked: Sequence[Pair] | frozenset[Pair] = (),
    ):
        _check_weight(weight)
        closure = transitive_closure(tuple(pairs))
        locked_set = frozenset(locked)
        if not locked_set <= closure:
            raise InvalidProfile("locked pairs must lie inside the closure of the ballot's pairs")
        object.__setattr__(self, "pairs", closure)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "locked", locked_set)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PartialBallot is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialBallot):
            return NotImplemented
        return (
            self.pairs == other.pairs
            and self.weight == other.weight
            and self.locked == other.locked
        )

    def __hash__(self) -> int:
        return hash((self.pairs, self.weight, self.locked))

    def __repr__(self) -> str:
        return f"PartialBallot(pairs={sorted(self.pairs)}, weight={self.weight}, locked={sorted(self.locked)})"

    def is_total(self, m: int) -> bool:
        """True when the closure ranks all m candidates completely."""
        return len(self.pairs) == m * (m - 1) // 2

    def to_order(self, m: int) -> tuple[int, ...]:
        """The unique ranking when the ballot is total; error otherwise."""
        if not self.is_total(m):
            raise InvalidProfile("ballot is not a complete ranking")
        above = {c: 0 for c in range(m)}
        for _, b in self.pairs:
            above[b] += 1
        return tuple(sorted(range(m), key=lambda c: above[c]))

    def locked_only(self) -> "PartialBallot":
        """The ballot with every unlocked commitment erased (manipulation view)."""
        return PartialBallot(self.locked, self.weight, self.locked)

    @staticmethod
    def from_order(order: Sequence[int], weight: int, locked_all: bool = False) -> "PartialBallot":
        ballot = WeightedBallot(tuple(order), weight)
        pairs = ballot.pairs()
        return PartialBallot(pairs, weight, pairs if locked_all else ())


Ballot = Union[WeightedBallot, PartialBallot]


@dataclass(frozen=True)
class Profile:
    """An election: candidates, ballots, and wholly-unknown weight.

    With ``strict_odd`` (the default) the total weight must be odd, which
    rules out pairwise ties.  Constructions that deliberately use even
    totals pass ``strict_odd=False``.
    """

    candidates: tuple[Candidate, ...]
    ballots: tuple[Ballot, ...] = ()
    unknown_weight: int = 0
    strict_odd: bool = True

    def __post_init__(self) -> None:
        m = len(self.candidates)
        if m == 0:
            raise InvalidProfile("a profile needs at least one candidate")
        ids = [c.id for c in self.candidates]
        if ids != list(range(m)):
            raise InvalidProfile("candidate ids must be dense and in declaration order")
        labels = [c.label for c in self.candidates]
        if len(set(labels)) != m:
            raise InvalidProfile("candidate labels must be unique")
        if self.unknown_weight < 0 or self.unknown_weight > MAX_WEIGHT:
            raise InvalidProfile("unknown_weight out of range")
        universe = set(range(m))
        seen: set = set()
        for ballot in self.ballots:
            if ballot in seen:  # identical ballots need only one check
                continue
            seen.add(ballot)
            if isinstance(ballot, WeightedBallot):
                if set(ballot.order) != universe:
                    raise InvalidProfile(
                        f"ballot {ballot.order} must rank exactly the declared candidates"
                    )
            else:
                mentioned = {c for pair in ballot.pairs for c in pair}
                if not mentioned <= universe:
                    raise InvalidProfile("partial ballot mentions undeclared candidates")
        total = self.total_weight
        if total > MAX_WEIGHT:
            raise InvalidProfile("total weight exceeds the 64-bit bound")
        if self.strict_odd and total % 2 == 0:
            raise InvalidProfile(
                f"total weight {total} is even; odd totals are required "
                "(construct with strict_odd=False to allow this)"
            )

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def total_weight(self) -> int:
        return sum(b.weight for b in self.ballots) + self.unknown_weight

    @property
    def is_complete(self) -> bool:
        """True when every ballot is a full ranking and nothing is unknown."""
        return self.unknown_weight == 0 and all(
            isinstance(b, WeightedBallot) for b in self.ballots
        )

    def candidate(self, cand_id: int) -> Candidate:
        return self.candidates[cand_id]

    def by_label(self, label: str) -> Candidate:
        for c in self.candidates:
            if c.label == label:
                return c
        raise InvalidProfile(f"no candidate labelled {label!r}")

    def complete_arrays(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """(orders, weights) arrays for a complete profile; error otherwise."""
        if not self.is_complete:
            raise InvalidProfile("operation requires a complete profile")
        orders = tuple(b.order for b in self.ballots)  # type: ignore[union-attr]
        weights = tuple(b.weight for b in self.ballots)
        return orders, weights


def candidates_from_labels(labels: Sequence[str]) -> tuple[Candidate, ...]:
    return tuple(Candidate(i, lab) for i, lab in enumerate(labels))


# ---------------------------------------------------------------------------
# Pairwise tallies


@dataclass(frozen=True)
class MajorityMatrix:
    """Committed and free pairwise mass of a (possibly incomplete) profile.

    ``fixed[i][j]`` is the weight already committed to preferring i over j;
    ``free[i][j]`` is the weight whose i-versus-j preference is still open
    (symmetric).  For every pair, fixed[i][j] + fixed[j][i] + free[i][j]
    equals the total weight.
    """

    fixed: tuple[tuple[int, ...], ...]
    free: tuple[tuple[int, ...], ...]
    total: int

    @property
    def m(self) -> int:
        return len(self.fixed)

    def forced_winner(self, i: int, j: int) -> int | None:
        """The candidate certain to win the pairwise contest, if any."""
        if 2 * self.fixed[i][j] > self.total:
            return i
        if 2 * self.fixed[j][i] > self.total:
            return j
        return None


def majority_matrix(profile: Profile) -> MajorityMatrix:
    """Aggregate committed pairwise weight; unknown weight is wholly free."""
    m = profile.m
    fixed = [[0] * m for _ in range(m)]
    for ballot in profile.ballots:
        if isinstance(ballot, WeightedBallot):
            o = ballot.order
            for i in range(m):
                for j in range(i + 1, m):
                    fixed[o[i]][o[j]] += ballot.weight
        else:
            for a, b in ballot.pairs:
                fixed[a][b] += ballot.weight
    total = profile.total_weight
    free = [
        [0 if i == j else total - fixed[i][j] - fixed[j][i] for j in range(m)]
        for i in range(m)
    ]
    return MajorityMatrix(
        tuple(tuple(row) for row in fixed),
        tuple(tuple(row) for row in free),
        total,
    )


# ---------------------------------------------------------------------------
# Completions of a single ballot


def linear_extensions(
    ballot: PartialBallot, m: int, cap: int | None = DEFAULT_COMPLETION_CAP
) -> Iterator[tuple[int, ...]]:
    """All total orders on 0..m-1 extending the ballot's commitments.

    Yields orders in lexicographic candidate-id order.  Raises CapExceeded
    as soon as more than ``cap`` extensions would be produced; nothing is
    ever silently dropped.
    """
    preds: dict[int, set[int]] = {c: set() for c in range(m)}
    for a, b in ballot.pairs:
        preds[b].add(a)
    produced = 0
    prefix: list[int] = []
    placed = [False] * m

    def emit() -> Iterator[tuple[int, ...]]:
        nonlocal produced
        if len(prefix) == m:
            produced += 1
            if cap is not None and produced > cap:
                raise CapExceeded(
                    f"ballot admits more than {cap} linear extensions", produced
                )
            yield tuple(prefix)
            return
        for c in range(m):
            if placed[c]:
                continue
            if any(not placed[p] for p in preds[c]):
                continue
            placed[c] = True
            prefix.append(c)
            yield from emit()
            prefix.pop()
            placed[c] = False

    return emit()


# ---------------------------------------------------------------------------
# Single-peakedness


def is_single_peaked(order: Sequence[int], axis: Axis) -> bool:
    """Check one complete ranking against an axis.

    A ranking is single-peaked when, walking down the ranking, each next
    candidate extends the contiguous axis segment formed so far by one
    position on the left or right.
    """
    pos = axis.order.index
    lo = hi = pos(order[0])
    for cand in order[1:]:
        p = pos(cand)
        if p == lo - 1:
            lo = p
        elif p == hi + 1:
            hi = p
        else:
            return False
    return True


def single_peaked_orders(axis: Axis, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """All single-peaked total orders for an axis (2^(m-1) of them).

    Orders are produced in lexicographic candidate-id order within each
    generation step; the overall stream is deterministic.
    """
    m = len(axis.order)
    produced = 0
    out: list[int] = []

    def extend(lo: int, hi: int) -> Iterator[tuple[int, ...]]:
        # invariant: out ranks exactly the axis segment (lo, hi) exclusive
        nonlocal produced
        if lo < 0 and hi >= m:
            produced += 1
            if cap is not None and produced > cap:
                raise CapExceeded(f"more than {cap} single-peaked orders", produced)
            yield tuple(out)
            return
        choices = []
        if lo >= 0:
            choices.append((axis.order[lo], lo - 1, hi))
        if hi < m:
            choices.append((axis.order[hi], lo, hi + 1))
        choices.sort()
        for cand, nlo, nhi in choices:
            out.append(cand)
            yield from extend(nlo, nhi)
            out.pop()

    def start() -> Iterator[tuple[int, ...]]:
        for peak in range(m):
            out.append(axis.order[peak])
            yield from extend(peak - 1, peak + 1)
            out.pop()

    return start()


def single_peaked_extensions(
    ballot: PartialBallot,
    m: int,
    axis: Axis,
    cap: int | None = DEFAULT_COMPLETION_CAP,
) -> Iterator[tuple[int, ...]]:
    """Linear extensions of the ballot that are single-peaked on the axis."""
    produced = 0
    for order in linear_extensions(ballot, m, cap=None):
        if is_single_peaked(order, axis):
            produced += 1
            if cap is not None and produced > cap:
                raise CapExceeded(
                    f"ballot admits more than {cap} single-peaked extensions", produced
                )
            yield order


def sp_completable(ballot: PartialBallot, m: int, axis: Axis) -> bool:
    return next(single_peaked_extensions(ballot, m, axis, cap=None), None) is not None


def single_peaked_condorcet_winner(profile: Profile, axis: Axis) -> Candidate:
    """The weighted-median peak of a complete single-peaked profile.

    With an odd total weight this candidate beats every other in a pairwise
    majority contest.

    Raises:
        InvalidProfile: if the profile is incomplete or has even total weight.
        NotCompletableSP: if some ballot is not single-peaked on the axis.
    """
    orders, weights = profile.complete_arrays()
    if profile.total_weight % 2 == 0:
        raise InvalidProfile("median-peak winner requires an odd total weight")
    peak_mass = [0] * profile.m
    for order, weight in zip(orders, weights):
        if not is_single_peaked(order, axis):
            raise NotCompletableSP(f"ballot {order} is not single-peaked on the axis")
        peak_mass[axis.position(order[0])] += weight
    need = profile.total_weight // 2 + 1
    acc = 0
    for position in range(profile.m):
        acc += peak_mass[position]
        if acc >= need:
            return profile.candidates[axis.order[position]]
    raise AssertionError("unreachable: cumulative weight must reach the majority")
