"""Brute-force referees and random generators shared by the test suite.

The referees recompute answers from first principles.  Completions are
enumerated one ballot at a time with no merging, projection, or pruning,
and each completed election is scored by replaying the rule.  They are
deliberately slow and must only be fed small inputs.
"""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator, Sequence

from votelab import (
    Axis,
    Candidate,
    PartialBallot,
    Profile,
    Rule,
    TieBreak,
    WeightedBallot,
    achievable_winners,
    candidates_from_labels,
    is_single_peaked,
    linear_extensions,
    single_peaked_extensions,
    single_peaked_orders,
    winner,
)

Order = tuple[int, ...]

LABELS = "ABCDEFGHIJKL"


def cands(m: int) -> tuple[Candidate, ...]:
    return candidates_from_labels(LABELS[:m])


def vote(order: Sequence[int], weight: int = 1) -> WeightedBallot:
    return WeightedBallot(tuple(order), weight)


def counts_of(orders: Sequence[Order], weights: Sequence[int], m: int) -> list[list[int]]:
    """Pairwise preference counts, computed directly from the orders."""
    counts = [[0] * m for _ in range(m)]
    for order, w in zip(orders, weights):
        for i, a in enumerate(order):
            for b in order[i + 1 :]:
                counts[a][b] += w
    return counts


def condorcet_of(completion: Profile) -> int | None:
    """Candidate id beating every rival by strict majority, or None."""
    orders, weights = completion.complete_arrays()
    m = completion.m
    total = completion.total_weight
    counts = counts_of(orders, weights, m)
    for c in range(m):
        if all(2 * counts[c][j] > total for j in range(m) if j != c):
            return c
    return None


# ---------------------------------------------------------------------------
# Completion enumeration, one slot per ballot and per unknown unit


def _slot_options(
    profile: Profile, axis: Axis | None, locked_only: bool
) -> list[tuple[int, list[Order]]]:
    m = profile.m
    slots: list[tuple[int, list[Order]]] = []
    for ballot in profile.ballots:
        if isinstance(ballot, WeightedBallot):
            if axis is not None and not is_single_peaked(ballot.order, axis):
                raise ValueError(f"complete ballot {ballot.order} violates the axis")
            slots.append((ballot.weight, [ballot.order]))
            continue
        source = ballot.locked_only() if locked_only else ballot
        if axis is None:
            options = list(linear_extensions(source, m, cap=None))
        else:
            options = list(single_peaked_extensions(source, m, axis, cap=None))
        slots.append((ballot.weight, options))
    if axis is None:
        pool = sorted(permutations(range(m)))
    else:
        pool = sorted(single_peaked_orders(axis))
    for _ in range(profile.unknown_weight):
        slots.append((1, list(pool)))
    return slots


def iter_completions(
    profile: Profile, *, axis: Axis | None = None, locked_only: bool = False
) -> Iterator[Profile]:
    """Every joint completion as a complete profile, no deduplication."""
    slots = _slot_options(profile, axis, locked_only)
    for choice in product(*(options for _, options in slots)):
        ballots = tuple(
            WeightedBallot(order, weight)
            for (weight, _), order in zip(slots, choice)
        )
        yield Profile(
            candidates=profile.candidates,
            ballots=ballots,
            strict_odd=profile.strict_odd,
        )


def completion_count(profile: Profile, *, axis: Axis | None = None) -> int:
    size = 1
    for _, options in _slot_options(profile, axis, False):
        size *= len(options)
    return size


# ---------------------------------------------------------------------------
# Referees


def brute_possible(
    rule: Rule, profile: Profile, *, axis: Axis | None = None
) -> frozenset[Candidate]:
    found: set[Candidate] = set()
    for completion in iter_completions(profile, axis=axis):
        found |= achievable_winners(rule, completion)
    return frozenset(found)


def brute_fine_over(rule: Rule, profile: Profile, *, axis: Axis | None = None) -> bool:
    seen: set[Candidate] = set()
    for completion in iter_completions(profile, axis=axis):
        seen |= achievable_winners(rule, completion)
        if len(seen) > 1:
            return False
    return len(seen) == 1


def brute_condorcet_classify(profile: Profile) -> tuple[str, int | None]:
    """("true", winner id), ("false", None) or ("not-determined", None)."""
    outcomes: set[int | None] = set()
    for completion in iter_completions(profile):
        outcomes.add(condorcet_of(completion))
        if len(outcomes) > 1:
            return ("not-determined", None)
    (only,) = outcomes
    return ("false", None) if only is None else ("true", only)


def brute_coalition_possible(
    rule: Rule, profile: Profile, coalition: Sequence[int], target: int
) -> bool:
    """Can the coalition elect the target under ties in its favour?"""
    m = profile.m
    indices = sorted(coalition)
    perms = sorted(permutations(range(m)))
    tb = TieBreak.favor(target)
    for combo in product(perms, repeat=len(indices)):
        ballots = list(profile.ballots)
        for idx, order in zip(indices, combo):
            ballots[idx] = WeightedBallot(order, profile.ballots[idx].weight)
        trial = Profile(
            candidates=profile.candidates,
            ballots=tuple(ballots),
            strict_odd=profile.strict_odd,
        )
        if winner(rule, trial, tb).id == target:
            return True
    return False


def brute_condorcet_coalition_possible(
    profile: Profile, coalition: Sequence[int], target: int
) -> bool:
    """Can the coalition make the target the Condorcet winner?"""
    m = profile.m
    indices = sorted(coalition)
    perms = sorted(permutations(range(m)))
    for combo in product(perms, repeat=len(indices)):
        ballots = list(profile.ballots)
        for idx, order in zip(indices, combo):
            ballots[idx] = WeightedBallot(order, profile.ballots[idx].weight)
        trial = Profile(
            candidates=profile.candidates,
            ballots=tuple(ballots),
            strict_odd=profile.strict_odd,
        )
        if condorcet_of(trial) == target:
            return True
    return False


def brute_preference_possible(rule: Rule, profile: Profile, target: int) -> bool:
    """Some locked-respecting rewrite of every ballot elects the target?"""
    tb = TieBreak.favor(target)
    for trial in iter_completions(profile, locked_only=True):
        if winner(rule, trial, tb).id == target:
            return True
    return False


def bracket_achievable(
    agenda, counts: Sequence[Sequence[int]], total: int
) -> set[int]:
    """Cup winners reachable over tie resolutions, straight off the tree."""
    if isinstance(agenda, int):
        return {agenda}
    left = bracket_achievable(agenda[0], counts, total)
    right = bracket_achievable(agenda[1], counts, total)
    out: set[int] = set()
    for c in left:
        for d in right:
            if 2 * counts[c][d] >= total:
                out.add(c)
            if 2 * counts[d][c] >= total:
                out.add(d)
    return out


# ---------------------------------------------------------------------------
# Random generators (always driven by a caller-seeded random.Random)


def rand_order(rng: random.Random, m: int) -> Order:
    return tuple(rng.sample(range(m), m))


def rand_partial(
    rng: random.Random,
    m: int,
    weight: int,
    *,
    lock: bool = False,
) -> PartialBallot:
    """A consistent partial ballot: a random subset of one order's pairs."""
    order = rand_order(rng, m)
    implied = list(WeightedBallot(order, 1).pairs())
    take = rng.randint(0, len(implied))
    pairs = rng.sample(implied, take)
    locked = rng.sample(pairs, rng.randint(0, len(pairs))) if lock else ()
    return PartialBallot(frozenset(pairs), weight, frozenset(locked))


def rand_sp_partial(
    rng: random.Random, m: int, axis: Axis, weight: int
) -> PartialBallot:
    """A partial ballot guaranteed to admit a single-peaked completion."""
    order = rng.choice(sorted(single_peaked_orders(axis)))
    implied = list(WeightedBallot(order, 1).pairs())
    take = rng.randint(0, len(implied))
    return PartialBallot(frozenset(rng.sample(implied, take)), weight)


def rand_agenda(rng: random.Random, ids: Sequence[int]):
    """A random binary agenda tree over the given candidate ids."""
    nodes: list = list(ids)
    rng.shuffle(nodes)
    while len(nodes) > 1:
        i = rng.randrange(len(nodes) - 1)
        nodes[i : i + 2] = [(nodes[i], nodes[i + 1])]
    return nodes[0]


def rand_even_bag(rng: random.Random, max_n: int, max_v: int) -> tuple[int, ...]:
    """A multiset of positive integers with an even sum."""
    while True:
        n = rng.randint(1, max_n)
        items = [rng.randint(1, max_v) for _ in range(n)]
        if sum(items) % 2 == 0:
            return tuple(sorted(items))


def make_odd(rng: random.Random, weights: list[int]) -> list[int]:
    """Bump one weight so the list sums odd (a lone 1 if empty)."""
    if not weights:
        return [1]
    if sum(weights) % 2 == 0:
        weights[rng.randrange(len(weights))] += 1
    return weights
