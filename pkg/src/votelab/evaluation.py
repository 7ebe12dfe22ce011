"""Win probabilities over explicit vote distributions.

A distribution is a finite list of complete profiles (scenarios) with exact
rational probabilities.  Correlation between agents is expressed by the
joint form itself: a scenario fixes every vote at once.  Independent agents
are a special case built by ``product_distribution``.  All arithmetic is
exact; no floats enter any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .completions import check_cap, completed_profile, completion_groups, iter_assignments
from .errors import CapExceeded, InvalidDistribution, ModelMismatch
from .profiles import (
    DEFAULT_COMPLETION_CAP,
    Candidate,
    Profile,
    WeightedBallot,
)
from .rules import Rule, TieBreak, winner
from .manipulation import ManipulationInstance

Order = tuple[int, ...]

__all__ = [
    "EvaluationQuery",
    "ScenarioDistribution",
    "evaluate",
    "product_distribution",
    "reduction_from_preference_manipulation",
    "win_probability",
]


def _as_probability(p) -> Fraction:
    if isinstance(p, float):
        raise InvalidDistribution(
            f"probability {p!r} is a float; supply an exact rational"
        )
    try:
        frac = Fraction(p)
    except (TypeError, ValueError) as exc:
        raise InvalidDistribution(f"bad probability {p!r}") from exc
    return frac


@dataclass(frozen=True)
class ScenarioDistribution:
    """Complete profiles with exact probabilities summing to one."""

    scenarios: tuple[tuple[Profile, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.scenarios:
            raise InvalidDistribution("a distribution needs at least one scenario")
        normalized = []
        for profile, p in self.scenarios:
            frac = _as_probability(p)
            if frac <= 0:
                raise InvalidDistribution(f"probability {frac} is not positive")
            if not profile.is_complete:
                raise InvalidDistribution("scenario profiles must be complete")
            normalized.append((profile, frac))
        object.__setattr__(self, "scenarios", tuple(normalized))
        first = self.scenarios[0][0]
        for profile, _ in self.scenarios[1:]:
            if profile.candidates != first.candidates:
                raise InvalidDistribution("scenarios disagree on the candidates")
            if profile.total_weight != first.total_weight:
                raise InvalidDistribution("scenarios disagree on the total weight")
        mass = sum(p for _, p in self.scenarios)
        if mass != 1:
            raise InvalidDistribution(f"probabilities sum to {mass}, not 1")

    @property
    def candidates(self) -> tuple[Candidate, ...]:
        return self.scenarios[0][0].candidates


@dataclass(frozen=True)
class EvaluationQuery:
    """Does the target's win probability strictly exceed the threshold r?"""

    target: Candidate
    r: Fraction
    rule: Rule
    tb: TieBreak | None = None

    def __post_init__(self) -> None:
        r = _as_probability(self.r)
        object.__setattr__(self, "r", r)
        if not 0 <= r <= 1:
            raise InvalidDistribution(f"threshold {r} is outside [0, 1]")


def win_probability(
    dist: ScenarioDistribution,
    rule: Rule,
    target: int | Candidate,
    tb: TieBreak | None = None,
) -> Fraction:
    """Exact probability that the target wins under the rule and tie-break."""
    target_id = target.id if isinstance(target, Candidate) else target
    mass = Fraction(0)
    for profile, p in dist.scenarios:
        if winner(rule, profile, tb).id == target_id:
            mass += p
    return mass


def evaluate(dist: ScenarioDistribution, query: EvaluationQuery) -> bool:
    """True iff the target's win probability is strictly greater than r.

    Stops scanning as soon as the answer is forced: the accumulated winning
    mass already exceeds r, or even granting every unscanned scenario to the
    target could not.  Exact either way.
    """
    target_id = (
        query.target.id if isinstance(query.target, Candidate) else query.target
    )
    acc = Fraction(0)
    remaining = Fraction(1)
    for profile, p in dist.scenarios:
        remaining -= p
        if winner(query.rule, profile, query.tb).id == target_id:
            acc += p
            if acc > query.r:
                return True
        if acc + remaining <= query.r:
            return False
    return acc > query.r


def _unit_split(profile: Profile, _cache: dict[Order, WeightedBallot]) -> Profile:
    """Each weight-k ballot as k identical unit ballots (same election).

    Unit ballots are immutable, so scenarios share one object per order.
    """
    ballots: list[WeightedBallot] = []
    for b in profile.ballots:
        unit = _cache.get(b.order)
        if unit is None:
            unit = _cache[b.order] = WeightedBallot(b.order, 1)
        ballots.extend([unit] * b.weight)
    return Profile(
        candidates=profile.candidates,
        ballots=tuple(ballots),
        strict_odd=profile.strict_odd,
    )


def reduction_from_preference_manipulation(
    inst: ManipulationInstance,
    *,
    cap: int | None = DEFAULT_COMPLETION_CAP,
) -> tuple[ScenarioDistribution, EvaluationQuery]:
    """Recast a preference-manipulation question as a threshold query.

    The scenarios are the joint completions of the instance's unlocked
    content, uniformly weighted, with every weight-k ballot split into k
    perfectly correlated unit agents inside each scenario.  With r = 0 and
    ties favouring the target, the query is true exactly when some
    completion elects the target, i.e. when the manipulation succeeds.
    """
    if inst.is_coalition:
        raise ModelMismatch("the reduction starts from a preference-model instance")
    profile = inst.profile
    groups = completion_groups(profile, locked_only=True, cap=cap)
    count = check_cap(groups, cap)
    share = Fraction(1, count)
    unit_cache: dict[Order, WeightedBallot] = {}
    scenarios = tuple(
        (_unit_split(completed_profile(profile, groups, assignment), unit_cache), share)
        for assignment in iter_assignments(groups)
    )
    dist = ScenarioDistribution(scenarios)
    query = EvaluationQuery(
        target=inst.target,
        r=Fraction(0),
        rule=inst.rule,
        tb=TieBreak.favor(inst.target),
    )
    return dist, query


def product_distribution(
    candidates: tuple[Candidate, ...],
    agents: Sequence[tuple[int, Sequence[tuple[Order, Fraction]]]],
    *,
    strict_odd: bool = True,
    cap: int | None = DEFAULT_COMPLETION_CAP,
) -> ScenarioDistribution:
    """Joint distribution of independent agents given per-agent marginals.

    Each agent is (weight, [(order, probability), ...]) with its marginal
    summing to 1.  The scenario count is the product of the marginal sizes
    and is guarded by ``cap``.
    """
    if not agents:
        raise InvalidDistribution("need at least one agent")
    size = 1
    for _, marginal in agents:
        if not marginal:
            raise InvalidDistribution("an agent's marginal cannot be empty")
        mass = sum(_as_probability(p) for _, p in marginal)
        if mass != 1:
            raise InvalidDistribution(f"an agent's marginal sums to {mass}, not 1")
        size *= len(marginal)
    if cap is not None and size > cap:
        raise CapExceeded(
            f"the product distribution holds {size} scenarios, above {cap}", size
        )
    scenarios = []
    for combo in product(*(marginal for _, marginal in agents)):
        prob = Fraction(1)
        ballots = []
        for (weight, _), (order, p) in zip(agents, combo):
            prob *= _as_probability(p)
            ballots.append(WeightedBallot(order, weight))
        scenario = Profile(
            candidates=candidates, ballots=tuple(ballots), strict_odd=strict_odd
        )
        scenarios.append((scenario, prob))
    return ScenarioDistribution(tuple(scenarios))
