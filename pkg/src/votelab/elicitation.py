"""Termination tests for vote elicitation.

An election may be decided before every preference is known: however the
missing ballots and unresolved pairwise comparisons are filled in, the same
candidate wins.  The predicates here answer that question for two styles of
elicitation: whole-ballot (some agents have not voted at all, the rest are
fully known) and pairwise (individual ballots may be partial orders).

A candidate is a *possible winner* when some joint completion, combined
with some resolution of the rule's internal ties, elects it.  Elicitation
is over exactly when a single possible winner remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .completions import (
    OptionGroup,
    check_cap,
    completed_arrays,
    completion_groups,
    fixed_arrays,
    iter_assignments,
)
from .errors import CapExceeded, InvalidProfile, ModelMismatch
from .profiles import (
    DEFAULT_COMPLETION_CAP,
    Axis,
    Candidate,
    PartialBallot,
    Profile,
    majority_matrix,
)
from .rules import (
    DEFAULT_STV_BRANCH_BOUND,
    Agenda,
    Copeland,
    Copeland2,
    Cup,
    Hybrid,
    Pairing,
    Rule,
    _achievable_ids,
    _argmax_set,
    _top_tallies,
    copeland2_keys_from_sign,
    copeland_scores_from_sign,
    cup_achievable_from_sign,
    pairwise_counts,
    validate_rule_for,
)

__all__ = [
    "CondorcetStatus",
    "condorcet_winner_fixed",
    "coarse_elicitation_over",
    "cup3_fine_over",
    "cup_single_peaked_over",
    "fine_elicitation_over",
    "fine_sp_elicitation_over",
    "hybrid_coarse_over",
    "possible_winners",
]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Possible winners over joint completions


def _positions(order: Sequence[int], m: int) -> list[int]:
    pos = [0] * m
    for idx, cand in enumerate(order):
        pos[cand] = idx
    return pos


def _pairwise_possible_ids(
    rule: Cup | Copeland | Copeland2,
    profile: Profile,
    groups: Sequence[OptionGroup],
    cap: int | None,
    stop_at: int | None,
) -> frozenset[int]:
    """Possible winners of a rule that depends only on pairwise majorities.

    Instead of walking whole joint completions, this projects every ballot
    option onto the pairs whose majority sign is still undecided and sums the
    projections with deduplication.  Two completions with the same projected
    sums produce the same sign matrix, so the reachable matrices (and hence
    the possible winners) are preserved exactly.  The cap bounds the summing
    work actually performed, which never exceeds the raw completion count.
    """
    m = profile.m
    total = profile.total_weight
    base_orders, base_weights = fixed_arrays(profile)
    base = pairwise_counts(base_orders, base_weights, m)

    all_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    group_pos = [
        [_positions(order, m) for order in group.options] for group in groups
    ]

    forced: dict[tuple[int, int], int] = {}
    open_pairs: list[tuple[int, int]] = []
    for i, j in all_pairs:
        lo = hi = base[i][j]
        for group, positions in zip(groups, group_pos):
            vals = [1 if pos[i] < pos[j] else 0 for pos in positions]
            bulk = group.weight * group.count
            lo += bulk * min(vals)
            hi += bulk * max(vals)
        s_lo, s_hi = _sgn(2 * lo - total), _sgn(2 * hi - total)
        if s_lo == s_hi:
            forced[(i, j)] = s_lo
        else:
            open_pairs.append((i, j))

    def achievable(sums: Sequence[int]) -> frozenset[int]:
        sign = [[0] * m for _ in range(m)]
        for (i, j), s in forced.items():
            sign[i][j], sign[j][i] = s, -s
        for (i, j), add in zip(open_pairs, sums):
            s = _sgn(2 * (base[i][j] + add) - total)
            sign[i][j], sign[j][i] = s, -s
        if isinstance(rule, Cup):
            return cup_achievable_from_sign(rule.agenda, sign)
        if isinstance(rule, Copeland2):
            return _argmax_set(copeland2_keys_from_sign(sign))
        return _argmax_set(copeland_scores_from_sign(sign))

    if not open_pairs:
        return achievable(())

    zero = (0,) * len(open_pairs)
    work = 0
    totals: set[tuple[int, ...]] = {zero}
    for group, positions in zip(groups, group_pos):
        scaled = sorted(
            {
                tuple(
                    group.weight if pos[i] < pos[j] else 0 for i, j in open_pairs
                )
                for pos in positions
            }
        )
        sums: set[tuple[int, ...]] = {zero}
        for _ in range(group.count):
            work += len(sums) * len(scaled)
            if cap is not None and work > cap:
                raise CapExceeded(
                    f"pairwise-projection search exceeded the cap of {cap}", work
                )
            sums = {
                tuple(a + b for a, b in zip(vec, opt))
                for vec in sums
                for opt in scaled
            }
        work += len(totals) * len(sums)
        if cap is not None and work > cap:
            raise CapExceeded(
                f"pairwise-projection search exceeded the cap of {cap}", work
            )
        totals = {
            tuple(a + b for a, b in zip(vec, add)) for vec in totals for add in sums
        }

    found: set[int] = set()
    for sums_vec in sorted(totals):
        found |= achievable(sums_vec)
        if len(found) == m or (stop_at is not None and len(found) >= stop_at):
            break
    return frozenset(found)


def _possible_ids(
    rule: Rule,
    profile: Profile,
    *,
    axis: Axis | None = None,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stop_at: int | None = None,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> frozenset[int]:
    m = profile.m
    validate_rule_for(rule, m)
    if m == 1:
        return frozenset((0,))
    groups = completion_groups(profile, axis=axis, cap=cap)
    if isinstance(rule, (Cup, Copeland, Copeland2)):
        return _pairwise_possible_ids(rule, profile, groups, cap, stop_at)
    check_cap(groups, cap)
    total = profile.total_weight
    found: set[int] = set()
    for assignment in iter_assignments(groups):
        orders, weights = completed_arrays(profile, groups, assignment)
        found |= _achievable_ids(
            rule, orders, weights, m, total, stv_branch_bound=stv_branch_bound
        )
        if len(found) == m or (stop_at is not None and len(found) >= stop_at):
            break
    return frozenset(found)


def possible_winners(
    rule: Rule,
    profile: Profile,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> frozenset[Candidate]:
    """Candidates that win some joint completion under ties in their favour.

    Raises CapExceeded rather than returning a truncated answer when the
    completion space (after symmetry merging) is larger than ``cap``.
    """
    ids = _possible_ids(rule, profile, cap=cap, stv_branch_bound=stv_branch_bound)
    return frozenset(profile.candidates[i] for i in ids)


def fine_elicitation_over(
    rule: Rule,
    profile: Profile,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> bool:
    """True iff every joint completion of the profile elects one candidate.

    Accepts any mix of complete ballots, partial ballots and wholly unknown
    weight.  The search stops as soon as two distinct possible winners are
    seen.
    """
    ids = _possible_ids(
        rule, profile, cap=cap, stop_at=2, stv_branch_bound=stv_branch_bound
    )
    return len(ids) == 1


def _require_whole_ballot_model(profile: Profile) -> None:
    for ballot in profile.ballots:
        if isinstance(ballot, PartialBallot) and not ballot.is_total(profile.m):
            raise ModelMismatch(
                "whole-ballot elicitation requires every cast ballot to be a "
                "total order; found a genuinely partial ballot"
            )


def coarse_elicitation_over(
    rule: Rule,
    profile: Profile,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> bool:
    """Whole-ballot termination: cast votes decide the winner already.

    The profile's only uncertainty may be wholly unknown agents
    (``unknown_weight``); a partial ballot that is not a total order raises
    ModelMismatch.
    """
    _require_whole_ballot_model(profile)
    return fine_elicitation_over(
        rule, profile, cap=cap, stv_branch_bound=stv_branch_bound
    )


# ---------------------------------------------------------------------------
# Three-candidate cup: polynomial termination test


def _subset_sums(weights: Sequence[int]) -> int:
    """Bitmask of reachable subset sums (bit k set iff some subset sums to k)."""
    bits = 1
    for w in weights:
        bits |= bits << w
    return bits


def _reachable_in(bits: int, lo: int, hi: int) -> bool:
    if lo > hi:
        return False
    lo = max(lo, 0)
    if lo > hi:
        return False
    window = (bits >> lo) & ((1 << (hi - lo + 1)) - 1)
    return window != 0


def _two_front_feasible(
    groups: Sequence[OptionGroup],
    group_pos: Sequence[Sequence[list[int]]],
    base: Sequence[Sequence[int]],
    total: int,
    p: tuple[int, int],
    q: tuple[int, int],
) -> bool:
    """Can some completion push both pairs ``p`` and ``q`` to at least half?

    Every ballot option is projected to the two booleans "p holds" and
    "q holds".  Options satisfying both dominate; ballots that can satisfy
    either but not both trade one front against the other, and the split of
    their weights is decided exactly by a subset-sum scan.
    """
    need = (total + 1) // 2
    sum_p = base[p[0]][p[1]]
    sum_q = base[q[0]][q[1]]
    swing: list[int] = []
    for group, positions in zip(groups, group_pos):
        can = {
            (pos[p[0]] < pos[p[1]], pos[q[0]] < pos[q[1]]) for pos in positions
        }
        bulk = group.weight * group.count
        if (True, True) in can:
            sum_p += bulk
            sum_q += bulk
        elif (True, False) in can and (False, True) in can:
            swing.extend([group.weight] * group.count)
        elif (True, False) in can:
            sum_p += bulk
        elif (False, True) in can:
            sum_q += bulk
    pool = sum(swing)
    lo = need - sum_p
    hi = sum_q + pool - need
    return _reachable_in(_subset_sums(swing), lo, min(hi, pool))


def cup3_fine_over(agenda: Agenda, profile: Profile) -> bool:
    """Polynomial termination test for cup elections over at most 3 candidates.

    With three candidates the agenda is one semifinal plus a bye.  A
    semifinalist is a possible winner iff raising it over both rivals
    wherever each ballot permits makes it beat (or tie) both; the two boosts
    never conflict inside one ballot.  The bye candidate must beat whichever
    semifinalist reaches the final, so each semifinalist is tried as the
    helper, splitting the weight of genuinely torn ballots exactly.
    Elicitation is over iff one possible winner remains.
    """
    m = profile.m
    if m > 3:
        raise ModelMismatch(f"the shortcut handles at most 3 candidates, got {m}")
    validate_rule_for(Cup(agenda), m)
    if m == 1:
        return True

    groups = completion_groups(profile, cap=None)
    group_pos = [
        [_positions(order, m) for order in group.options] for group in groups
    ]
    base_orders, base_weights = fixed_arrays(profile)
    base = pairwise_counts(base_orders, base_weights, m)
    total = profile.total_weight
    need = (total + 1) // 2

    def max_count(i: int, j: int) -> int:
        n = base[i][j]
        for group, positions in zip(groups, group_pos):
            if any(pos[i] < pos[j] for pos in positions):
                n += group.weight * group.count
        return n

    if m == 2:
        possible = [c for c in (0, 1) if max_count(c, 1 - c) >= need]
        return len(possible) == 1

    semi, bye = agenda
    if isinstance(semi, int):
        semi, bye = bye, semi
    x, y = semi

    possible = set()
    for c, other in ((x, y), (y, x)):
        # Boosting c over both rivals is conflict-free per ballot, so the
        # two maxima are reached simultaneously.
        if max_count(c, other) >= need and max_count(c, bye) >= need:
            possible.add(c)
    for helper, rival in ((x, y), (y, x)):
        if _two_front_feasible(
            groups, group_pos, base, total, (bye, helper), (helper, rival)
        ):
            possible.add(bye)
            break
    return len(possible) == 1


# ---------------------------------------------------------------------------
# Condorcet winner status from committed preferences


@dataclass(frozen=True)
class CondorcetStatus:
    """Trichotomy for the Condorcet-winner question on an incomplete profile.

    kind is "true" (the winner is already forced; ``winner`` names it),
    "false" (no completion yields any Condorcet winner) or "not-determined".
    """

    kind: str
    winner: Candidate | None = None


def condorcet_winner_fixed(profile: Profile) -> CondorcetStatus:
    """Is the existence (and identity) of a Condorcet winner already settled?

    Committed pairwise weight alone decides this: a candidate is the forced
    winner iff its committed support against every rival exceeds half the
    total weight, and no winner can emerge iff every candidate already has
    half the weight committed against it by someone.
    """
    m = profile.m
    total = profile.total_weight
    fixed = majority_matrix(profile).fixed
    if m == 1:
        return CondorcetStatus("true", profile.candidates[0])
    for c in range(m):
        if all(2 * fixed[c][j] > total for j in range(m) if j != c):
            return CondorcetStatus("true", profile.candidates[c])
    blocked = all(
        any(2 * fixed[j][c] >= total for j in range(m) if j != c) for c in range(m)
    )
    if blocked:
        return CondorcetStatus("false")
    return CondorcetStatus("not-determined")


# ---------------------------------------------------------------------------
# Single-peaked elicitation


def fine_sp_elicitation_over(
    rule: Rule,
    profile: Profile,
    axis: Axis,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> bool:
    """Termination when every completion must be single-peaked on ``axis``.

    Raises NotCompletableSP if some ballot admits no single-peaked
    completion (including complete ballots that already violate the axis).
    """
    ids = _possible_ids(
        rule,
        profile,
        axis=axis,
        cap=cap,
        stop_at=2,
        stv_branch_bound=stv_branch_bound,
    )
    return len(ids) == 1


def _peak_positions(profile: Profile, axis: Axis) -> list[tuple[int, int, int]]:
    """Per agent (weight, leftmost peak, rightmost peak) on the axis.

    Wholly unknown units may peak anywhere.  Raises NotCompletableSP via the
    extension enumerator when a ballot cannot be completed single-peaked.
    """
    groups = completion_groups(profile, axis=axis, cap=None)
    out: list[tuple[int, int, int]] = []
    for group in groups:
        peaks = sorted({axis.position(order[0]) for order in group.options})
        for _ in range(group.count):
            out.append((group.weight, peaks[0], peaks[-1]))
    for ballot in profile.ballots:
        if not isinstance(ballot, PartialBallot):
            p = axis.position(ballot.order[0])
            out.append((ballot.weight, p, p))
    return out


def _weighted_median(entries: list[tuple[int, int]], total: int) -> int:
    """Median position of a weighted multiset; total must be odd."""
    half = (total + 1) // 2
    seen = 0
    for pos, w in sorted(entries):
        seen += w
        if seen >= half:
            return pos
    raise InvalidProfile("weights do not cover the profile total")


def cup_single_peaked_over(profile: Profile, axis: Axis) -> bool:
    """Median-peak shortcut for cup elections restricted to single-peaked votes.

    With odd total weight every single-peaked completion has a Condorcet
    winner, the candidate at the weighted median peak, and a cup elects it
    under every agenda.  Elicitation is therefore over iff the median peak
    is the same when every agent sits at its leftmost achievable peak and at
    its rightmost.  Requires odd total weight.
    """
    if profile.total_weight % 2 == 0:
        raise InvalidProfile("the median-peak test needs an odd total weight")
    spans = _peak_positions(profile, axis)
    lo = _weighted_median([(l, w) for w, l, _ in spans], profile.total_weight)
    hi = _weighted_median([(r, w) for w, _, r in spans], profile.total_weight)
    return lo == hi


# ---------------------------------------------------------------------------
# Hybrid rule: whole-ballot termination in polynomial time


def hybrid_coarse_over(pairing: Pairing, profile: Profile) -> bool:
    """Whole-ballot termination test for the pair-then-plurality rule.

    A candidate can survive its opening pair iff the cast weight against it
    is at most half the total (unknown agents can supply the rest).  Among
    each achievable set of survivors, cast ballots transfer to their
    highest-ranked survivor, and a survivor is a possible winner iff the
    unknown weight closes every tally gap.  Over iff one possible winner
    remains.  Raises ModelMismatch if a cast ballot is genuinely partial.
    """
    _require_whole_ballot_model(profile)
    m = profile.m
    validate_rule_for(Hybrid(pairing), m)
    if m == 1:
        return True
    unknown = profile.unknown_weight
    total = profile.total_weight
    cast_orders, cast_weights = _cast_arrays(profile)
    counts = pairwise_counts(cast_orders, cast_weights, m)

    choices: list[tuple[int, ...]] = []
    for a, b in pairing.pairs:
        alive = tuple(
            c for c, o in ((a, b), (b, a)) if 2 * counts[o][c] <= total
        )
        choices.append(alive)
    bye = (pairing.bye,) if pairing.bye is not None else ()

    found: set[int] = set()
    for picks in product(*choices):
        survivors = frozenset(picks + bye)
        tally = _top_tallies(cast_orders, cast_weights, m, survivors)
        for c in survivors:
            if all(
                tally[c] + unknown >= tally[x] for x in survivors if x != c
            ):
                found.add(c)
        if len(found) > 1:
            return False
    return len(found) == 1


def _cast_arrays(profile: Profile) -> tuple[tuple, tuple]:
    """(orders, weights) of all cast ballots, completing total partials."""
    orders = []
    weights = []
    m = profile.m
    for ballot in profile.ballots:
        if isinstance(ballot, PartialBallot):
            orders.append(ballot.to_order(m))
        else:
            orders.append(ballot.order)
        weights.append(ballot.weight)
    return tuple(orders), tuple(weights)
