"""Strategic voting: can designated agents make a chosen candidate win?

Two freedom models share one instance type.  In the *coalition* model a set
of ballot indices may be rewritten wholesale; every other ballot is a known
total order.  In the *preference* model each ballot's locked pairs are
immutable and everything else (including committed-but-unlocked pairs) may
be rewritten, as long as the result is a total order extending the locked
pairs.  Ties are always resolved in the manipulators' favour: success means
the target wins under tie-breaking for the target.
"""

from __future__ import annotations

from dataclasses import dataclass

from .completions import (
    check_cap,
    completed_arrays,
    completed_profile,
    completion_groups,
    fixed_arrays,
    iter_assignments,
)
from .errors import InvalidInstance, ModelMismatch
from .profiles import (
    DEFAULT_COMPLETION_CAP,
    Candidate,
    PartialBallot,
    Profile,
)
from .rules import (
    DEFAULT_STV_BRANCH_BOUND,
    Agenda,
    Cup,
    Rule,
    _achievable_ids,
    pairwise_counts,
    validate_rule_for,
)

Order = tuple[int, ...]

__all__ = [
    "ManipulationInstance",
    "coalition_manipulate",
    "condorcet_coalition_manipulate",
    "preference_manipulate",
]


@dataclass(frozen=True)
class ManipulationInstance:
    """One manipulation question: rule, target, profile, and who may lie.

    ``coalition`` names the ballot indices whose entire orders are free;
    None selects the preference model, where freedom lives in each ballot's
    unlocked pairs instead.
    """

    rule: Rule
    target: Candidate
    profile: Profile
    coalition: frozenset[int] | None = None

    def __post_init__(self) -> None:
        target = self.target
        pool = self.profile.candidates
        if isinstance(target, int):
            if not 0 <= target < len(pool):
                raise InvalidInstance(f"target id {target} is not in the profile")
            target = pool[target]
            object.__setattr__(self, "target", target)
        if not 0 <= target.id < len(pool) or pool[target.id] != target:
            raise InvalidInstance(f"target {target} is not in the profile")
        if self.coalition is not None:
            coalition = frozenset(self.coalition)
            object.__setattr__(self, "coalition", coalition)
            n = len(self.profile.ballots)
            for idx in coalition:
                if not 0 <= idx < n:
                    raise InvalidInstance(f"coalition index {idx} out of range")
                ballot = self.profile.ballots[idx]
                if isinstance(ballot, PartialBallot) and ballot.locked:
                    raise InvalidInstance(
                        f"coalition ballot {idx} carries locked pairs; a "
                        "coalition member's whole order must be free"
                    )

    @property
    def is_coalition(self) -> bool:
        return self.coalition is not None


def _require_coalition(inst: ManipulationInstance) -> None:
    if not inst.is_coalition:
        raise ModelMismatch("this operation needs a coalition-model instance")
    if inst.profile.unknown_weight:
        raise ModelMismatch(
            "coalition manipulation needs every non-coalition vote known; "
            "the profile still has wholly unknown weight"
        )
    m = inst.profile.m
    for idx, ballot in enumerate(inst.profile.ballots):
        if idx in inst.coalition:
            continue
        if isinstance(ballot, PartialBallot) and not ballot.is_total(m):
            raise ModelMismatch(
                f"non-coalition ballot {idx} is partial; outside the "
                "coalition every vote must be a total order"
            )


def _fixed_side(profile: Profile, coalition: frozenset[int]) -> tuple[tuple, tuple]:
    """(orders, weights) of the non-coalition ballots."""
    m = profile.m
    orders = []
    weights = []
    for idx, ballot in enumerate(profile.ballots):
        if idx in coalition:
            continue
        order = ballot.to_order(m) if isinstance(ballot, PartialBallot) else ballot.order
        orders.append(order)
        weights.append(ballot.weight)
    return tuple(orders), tuple(weights)


def _probe_profile(profile: Profile, coalition: frozenset[int]) -> Profile:
    """The profile with every coalition ballot blanked to full freedom."""
    ballots = list(profile.ballots)
    for idx in coalition:
        ballots[idx] = PartialBallot(frozenset(), profile.ballots[idx].weight)
    return Profile(
        candidates=profile.candidates,
        ballots=tuple(ballots),
        unknown_weight=0,
        strict_odd=profile.strict_odd,
    )


# ---------------------------------------------------------------------------
# Coalition model


def coalition_manipulate(
    inst: ManipulationInstance,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> dict[int, Order] | None:
    """Total orders for the coalition that make the target win, or None.

    The returned mapping assigns one order to each coalition ballot index;
    replaying it through the rule with ties favouring the target yields the
    target.  Cup elections use a polynomial bracket argument; other rules
    search the coalition's joint ballot space (guarded by ``cap``).
    """
    _require_coalition(inst)
    profile = inst.profile
    m = profile.m
    validate_rule_for(inst.rule, m)
    target = inst.target.id
    coalition = inst.coalition

    if isinstance(inst.rule, Cup):
        order = _cup_coalition_order(inst.rule.agenda, profile, coalition, target)
        return None if order is None else {idx: order for idx in sorted(coalition)}

    probe = _probe_profile(profile, coalition)
    groups = completion_groups(
        probe,
        locked_only=True,
        option_key=lambda order: (order.index(target), order),
        cap=cap,
    )
    check_cap(groups, cap)
    total = probe.total_weight
    for assignment in iter_assignments(groups):
        orders, weights = completed_arrays(probe, groups, assignment)
        ids = _achievable_ids(
            inst.rule, orders, weights, m, total, stv_branch_bound=stv_branch_bound
        )
        if target in ids:
            out: dict[int, Order] = {}
            for group, combo in zip(groups, assignment):
                for idx, order in zip(group.indices, combo):
                    out[idx] = order
            return out
    return None


def _cup_coalition_order(
    agenda: Agenda,
    profile: Profile,
    coalition: frozenset[int],
    target: int,
) -> Order | None:
    """One shared coalition order winning the bracket for the target, or None.

    A candidate can take a bracket node iff it can take its own side and the
    full coalition weight lifts it to at least half against some candidate
    able to take the other side.  The winning matches chosen this way charge
    each loser exactly once, so they form a tree rooted at the target; any
    order listing conquerors before conquered realizes every needed boost
    simultaneously, and all coalition members can cast it identically.
    """
    m = profile.m
    coalition_weight = sum(profile.ballots[i].weight for i in coalition)
    orders, weights = _fixed_side(profile, coalition)
    counts = pairwise_counts(orders, weights, m)
    total = profile.total_weight

    witness: dict[tuple, dict[int, tuple[int, int]]] = {}

    def solve(node: Agenda) -> dict[int, tuple[int, int] | None]:
        if isinstance(node, int):
            return {node: None}
        left, right = solve(node[0]), solve(node[1])
        table: dict[int, tuple[int, int] | None] = {}
        for mine, theirs, side in ((left, right, 1), (right, left, 0)):
            for c in mine:
                for d in sorted(theirs):
                    if 2 * (counts[c][d] + coalition_weight) >= total:
                        table[c] = (d, side)
                        break
        witness[node] = table
        return table

    root = solve(agenda) if not isinstance(agenda, int) else {agenda: None}
    if target not in root:
        return None
    if isinstance(agenda, int):
        return (agenda,)

    beats: dict[int, list[int]] = {c: [] for c in range(m)}

    def realize(node: Agenda, c: int) -> None:
        if isinstance(node, int):
            return
        d, loser_side = witness[node][c]
        realize(node[1 - loser_side], c)
        realize(node[loser_side], d)
        beats[c].append(d)

    realize(agenda, target)
    order: list[int] = []

    def emit(c: int) -> None:
        order.append(c)
        for d in sorted(beats[c]):
            emit(d)

    emit(target)
    return tuple(order)


def condorcet_coalition_manipulate(
    inst: ManipulationInstance,
) -> dict[int, Order] | None:
    """Coalition votes making the target the Condorcet winner, or None.

    Ranking the target first in every coalition ballot is optimal, so the
    test is a single arithmetic pass: Some iff the fixed support plus the
    whole coalition weight strictly beats half the total against every
    rival.  Returned orders place the target first, the rest by id.
    """
    _require_coalition(inst)
    profile = inst.profile
    m = profile.m
    target = inst.target.id
    coalition_weight = sum(profile.ballots[i].weight for i in inst.coalition)
    orders, weights = _fixed_side(profile, inst.coalition)
    counts = pairwise_counts(orders, weights, m)
    total = profile.total_weight
    for j in range(m):
        if j != target and 2 * (counts[target][j] + coalition_weight) <= total:
            return None
    order = (target,) + tuple(c for c in range(m) if c != target)
    return {idx: order for idx in sorted(inst.coalition)}


# ---------------------------------------------------------------------------
# Preference model


def preference_manipulate(
    inst: ManipulationInstance,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> Profile | None:
    """A completion of the unlocked content electing the target, or None.

    Every returned ballot is a total order extending its locked pairs, and
    replaying the rule on the returned profile with ties favouring the
    target yields the target.  The search branches on the heaviest ballots
    first and tries target-topmost extensions first, so witnesses surface
    early; exhaustion proves impossibility.
    """
    if inst.is_coalition:
        raise ModelMismatch("this operation needs a preference-model instance")
    profile = inst.profile
    m = profile.m
    validate_rule_for(inst.rule, m)
    target = inst.target.id
    groups = completion_groups(
        profile,
        locked_only=True,
        option_key=lambda order: (order.index(target), order),
        cap=cap,
    )
    check_cap(groups, cap)
    total = profile.total_weight
    for assignment in iter_assignments(groups):
        orders, weights = completed_arrays(profile, groups, assignment)
        ids = _achievable_ids(
            inst.rule, orders, weights, m, total, stv_branch_bound=stv_branch_bound
        )
        if target in ids:
            return completed_profile(profile, groups, assignment)
    return None
