"""Voting rules and tie-break policies.

Every rule here is resolute only up to internal ties (equal scores, tied
pairwise contests on even total weight, tied elimination rounds).  Rather
than resolving each tie locally, the adversarial policies branch over every
resolution globally:

* ``achievable_winners`` returns the set of candidates that win under some
  resolution of all internal ties;
* ``TieBreak.favor(c)`` makes c the winner whenever c is achievable;
* ``TieBreak.against(c)`` makes c the winner only when nothing else is
  achievable;
* ``TieBreak.lex()`` resolves every tie toward the lower candidate id
  (in elimination rounds the higher id is the one eliminated).

Exact elimination-tie branching in STV is only attempted up to a candidate
bound (default 6); above it ties fall back to the lexicographic resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import CapExceeded, InvalidProfile
from .profiles import Candidate, Profile

DEFAULT_STV_BRANCH_BOUND = 6

Agenda = Union[int, tuple]  # leaf: candidate id; node: (Agenda, Agenda)

Orders = tuple[tuple[int, ...], ...]
Weights = tuple[int, ...]
Sign = Callable[[int, int], int]


# ---------------------------------------------------------------------------
# Tie-break policy


@dataclass(frozen=True)
class TieBreak:
    """How the chair resolves internal ties; see the module docstring."""

    kind: str
    candidate: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("lex", "favor", "against"):
            raise InvalidProfile(f"unknown tie-break kind {self.kind!r}")
        if (self.kind == "lex") != (self.candidate is None):
            raise InvalidProfile("favor/against need a candidate, lex takes none")

    @staticmethod
    def lex() -> "TieBreak":
        return TieBreak("lex")

    @staticmethod
    def favor(candidate: int | Candidate) -> "TieBreak":
        return TieBreak("favor", _cand_id(candidate))

    @staticmethod
    def against(candidate: int | Candidate) -> "TieBreak":
        return TieBreak("against", _cand_id(candidate))


def _cand_id(candidate: int | Candidate) -> int:
    return candidate.id if isinstance(candidate, Candidate) else candidate


# ---------------------------------------------------------------------------
# Rule descriptions


@dataclass(frozen=True)
class ScoringVector:
    """Non-increasing, not-all-equal vector of non-negative integer scores."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        v = self.values
        if len(v) < 2:
            raise InvalidProfile("scoring vector needs at least two positions")
        if any(x < 0 for x in v):
            raise InvalidProfile("scoring vector values must be non-negative")
        if any(v[i] < v[i + 1] for i in range(len(v) - 1)):
            raise InvalidProfile("scoring vector must be non-increasing")
        if v[0] == v[-1]:
            raise InvalidProfile("scoring vector must not be constant")


@dataclass(frozen=True)
class Scoring:
    """A positional scoring rule: a named family or an explicit vector."""

    name: str | None = None
    vector: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if (self.name is None) == (self.vector is None):
            raise InvalidProfile("give exactly one of a family name or a vector")
        if self.name is not None and self.name not in ("plurality", "veto", "borda"):
            raise InvalidProfile(f"unknown scoring family {self.name!r}")
        if self.vector is not None:
            ScoringVector(self.vector)

    def vector_for(self, m: int) -> tuple[int, ...]:
        if self.vector is not None:
            if len(self.vector) != m:
                raise InvalidProfile(
                    f"scoring vector has {len(self.vector)} entries for {m} candidates"
                )
            return self.vector
        if self.name == "plurality":
            return (1,) + (0,) * (m - 1)
        if self.name == "veto":
            return (1,) * (m - 1) + (0,)
        return tuple(range(m - 1, -1, -1))  # borda


@dataclass(frozen=True)
class Cup(object):
    """Knockout tournament over a fixed agenda tree."""

    agenda: Agenda

    def __post_init__(self) -> None:
        agenda_leaves(self.agenda)  # validates shape and uniqueness


@dataclass(frozen=True)
class Copeland:
    """Highest wins-minus-losses pairwise record."""


@dataclass(frozen=True)
class Copeland2:
    """Copeland with first-level ties broken by the sum of the first-order
    scores of each tied candidate's defeated competitors."""


@dataclass(frozen=True)
class Runoff:
    """Plurality with runoff between the top two."""


@dataclass(frozen=True)
class Stv:
    """Repeated elimination of the lowest top-choice weight until a strict
    majority appears."""


@dataclass(frozen=True)
class Pairing:
    """A one-round pairing of candidates, with an optional bye."""

    pairs: tuple[tuple[int, int], ...]
    bye: int | None = None

    def __post_init__(self) -> None:
        seen: list[int] = [c for pair in self.pairs for c in pair]
        if self.bye is not None:
            seen.append(self.bye)
        if len(set(seen)) != len(seen):
            raise InvalidProfile("pairing mentions a candidate twice")

    def members(self) -> frozenset[int]:
        return frozenset(
            [c for pair in self.pairs for c in pair]
            + ([self.bye] if self.bye is not None else [])
        )


@dataclass(frozen=True)
class Hybrid:
    """One pairwise knockout round, then plurality among the survivors.

    Each ballot's plurality vote goes to its highest-ranked survivor.
    """

    pairing: Pairing


Rule = Union[Scoring, Cup, Copeland, Copeland2, Runoff, Stv, Hybrid]


def plurality() -> Scoring:
    return Scoring(name="plurality")


def veto() -> Scoring:
    return Scoring(name="veto")


def borda() -> Scoring:
    return Scoring(name="borda")


def agenda_leaves(agenda: Agenda) -> tuple[int, ...]:
    """Leaf candidate ids in left-to-right order; validates the tree."""
    out: list[int] = []

    def walk(node: Agenda) -> None:
        if isinstance(node, int):
            out.append(node)
        elif isinstance(node, tuple) and len(node) == 2:
            walk(node[0])
            walk(node[1])
        else:
            raise InvalidProfile(f"malformed agenda node {node!r}")

    walk(agenda)
    if len(set(out)) != len(out):
        raise InvalidProfile("agenda repeats a candidate")
    return tuple(out)


def is_balanced(agenda: Agenda) -> bool:
    """True when leaf depths differ by at most one."""
    depths: list[int] = []

    def walk(node: Agenda, d: int) -> None:
        if isinstance(node, int):
            depths.append(d)
        else:
            walk(node[0], d + 1)
            walk(node[1], d + 1)

    walk(agenda, 0)
    return max(depths) - min(depths) <= 1


def validate_rule_for(rule: Rule, m: int) -> None:
    """Check a rule is applicable to an m-candidate election."""
    if isinstance(rule, Scoring) and m >= 2:
        rule.vector_for(m)
    elif isinstance(rule, Cup):
        if set(agenda_leaves(rule.agenda)) != set(range(m)):
            raise InvalidProfile("cup agenda must cover the candidate set exactly")
    elif isinstance(rule, Hybrid):
        if rule.pairing.members() != frozenset(range(m)):
            raise InvalidProfile("pairing must cover the candidate set exactly")


# ---------------------------------------------------------------------------
# Rule specification strings


def parse_rule(text: str, candidates: Sequence[Candidate]) -> Rule:
    """Parse a rule specification string such as ``cup:((A,B),C)``."""
    text = text.strip()
    if text in ("plurality", "veto", "borda"):
        return Scoring(name=text)
    if text == "copeland":
        return Copeland()
    if text == "copeland2":
        return Copeland2()
    if text == "runoff":
        return Runoff()
    if text == "stv":
        return Stv()
    if text.startswith("scoring:"):
        try:
            values = tuple(int(x) for x in text[len("scoring:") :].split(","))
        except ValueError as exc:
            raise InvalidProfile(f"bad scoring vector in {text!r}") from exc
        return Scoring(vector=values)
    if text.startswith("cup:"):
        return Cup(_parse_agenda(text[len("cup:") :], candidates))
    if text.startswith("hybrid:"):
        return Hybrid(_parse_pairing(text[len("hybrid:") :], candidates))
    raise InvalidProfile(f"unknown rule specification {text!r}")


def format_rule(rule: Rule, candidates: Sequence[Candidate]) -> str:
    if isinstance(rule, Scoring):
        return rule.name if rule.name else "scoring:" + ",".join(map(str, rule.vector))
    if isinstance(rule, Copeland):
        return "copeland"
    if isinstance(rule, Copeland2):
        return "copeland2"
    if isinstance(rule, Runoff):
        return "runoff"
    if isinstance(rule, Stv):
        return "stv"
    if isinstance(rule, Cup):
        return "cup:" + format_agenda(rule.agenda, candidates)
    if isinstance(rule, Hybrid):
        parts = "".join(
            f"({candidates[a].label},{candidates[b].label})" for a, b in rule.pairing.pairs
        )
        return "hybrid:" + parts
    raise InvalidProfile(f"unknown rule {rule!r}")


def format_agenda(agenda: Agenda, candidates: Sequence[Candidate]) -> str:
    if isinstance(agenda, int):
        return candidates[agenda].label
    return f"({format_agenda(agenda[0], candidates)},{format_agenda(agenda[1], candidates)})"


def _parse_agenda(text: str, candidates: Sequence[Candidate]) -> Agenda:
    by_label = {c.label: c.id for c in candidates}
    pos = 0

    def parse() -> Agenda:
        nonlocal pos
        if pos >= len(text):
            raise InvalidProfile(f"truncated agenda {text!r}")
        if text[pos] == "(":
            pos += 1
            left = parse()
            if pos >= len(text) or text[pos] != ",":
                raise InvalidProfile(f"expected ',' in agenda {text!r}")
            pos += 1
            right = parse()
            if pos >= len(text) or text[pos] != ")":
                raise InvalidProfile(f"expected ')' in agenda {text!r}")
            pos += 1
            return (left, right)
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        label = text[start:pos].strip()
        if label not in by_label:
            raise InvalidProfile(f"unknown candidate {label!r} in agenda")
        return by_label[label]

    agenda = parse()
    if pos != len(text.rstrip()):
        raise InvalidProfile(f"trailing characters in agenda {text!r}")
    return agenda


def _parse_pairing(text: str, candidates: Sequence[Candidate]) -> Pairing:
    by_label = {c.label: c.id for c in candidates}
    body = text.strip()
    pairs: list[tuple[int, int]] = []
    while body:
        if not body.startswith("("):
            raise InvalidProfile(f"bad pairing syntax {text!r}")
        close = body.index(")") if ")" in body else -1
        if close < 0:
            raise InvalidProfile(f"unclosed pair in {text!r}")
        inner = body[1:close]
        names = [s.strip() for s in inner.split(",")]
        if len(names) != 2:
            raise InvalidProfile(f"each pre-round pair needs two candidates: {inner!r}")
        for name in names:
            if name not in by_label:
                raise InvalidProfile(f"unknown candidate {name!r} in pairing")
        pairs.append((by_label[names[0]], by_label[names[1]]))
        body = body[close + 1 :].strip()
    paired = {c for pair in pairs for c in pair}
    rest = [c.id for c in candidates if c.id not in paired]
    if len(rest) > 1:
        raise InvalidProfile("pairing leaves more than one candidate without a pair")
    return Pairing(tuple(pairs), rest[0] if rest else None)


# ---------------------------------------------------------------------------
# Pairwise machinery shared by several rules


def pairwise_counts(orders: Orders, weights: Weights, m: int) -> list[list[int]]:
    n = [[0] * m for _ in range(m)]
    for order, w in zip(orders, weights):
        for i, a in enumerate(order):
            row = n[a]
            for b in order[i + 1 :]:
                row[b] += w
    return n


def sign_matrix(counts: Sequence[Sequence[int]], total: int) -> list[list[int]]:
    """sign[i][j] = 1 if i strictly beats j, -1 if j does, 0 on a tie."""
    m = len(counts)
    sign = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                d = 2 * counts[i][j] - total
                sign[i][j] = 1 if d > 0 else (-1 if d < 0 else 0)
    return sign


def cup_achievable_from_sign(agenda: Agenda, sign: Sequence[Sequence[int]]) -> frozenset[int]:
    """Candidates able to win the cup under some resolution of pairwise ties."""

    def walk(node: Agenda) -> frozenset[int]:
        if isinstance(node, int):
            return frozenset((node,))
        left, right = walk(node[0]), walk(node[1])
        out = set()
        for x in left:
            if any(sign[x][y] >= 0 for y in right):
                out.add(x)
        for y in right:
            if any(sign[y][x] >= 0 for x in left):
                out.add(y)
        return frozenset(out)

    return walk(agenda)


def cup_lex_from_sign(agenda: Agenda, sign: Sequence[Sequence[int]]) -> int:
    def walk(node: Agenda) -> int:
        if isinstance(node, int):
            return node
        x, y = walk(node[0]), walk(node[1])
        s = sign[x][y]
        return x if s > 0 else (y if s < 0 else min(x, y))

    return walk(agenda)


def copeland_scores_from_sign(sign: Sequence[Sequence[int]]) -> list[int]:
    m = len(sign)
    return [sum(sign[i][j] for j in range(m) if j != i) for i in range(m)]


def copeland2_keys_from_sign(sign: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """(first-order score, defeated competitors' score sum) per candidate."""
    m = len(sign)
    first = copeland_scores_from_sign(sign)
    keys = []
    for i in range(m):
        second = sum(first[j] for j in range(m) if j != i and sign[i][j] > 0)
        keys.append((first[i], second))
    return keys


# ---------------------------------------------------------------------------
# Per-rule winner sets on complete elections


def _argmax_set(scores: Sequence) -> frozenset[int]:
    best = max(scores)
    return frozenset(i for i, s in enumerate(scores) if s == best)


def _scoring_scores(orders: Orders, weights: Weights, m: int, vector: tuple[int, ...]) -> list[int]:
    scores = [0] * m
    for order, w in zip(orders, weights):
        for position, cand in enumerate(order):
            scores[cand] += w * vector[position]
    return scores


def _top_tallies(orders: Orders, weights: Weights, m: int, alive: frozenset[int]) -> list[int]:
    tally = [0] * m
    for order, w in zip(orders, weights):
        for cand in order:
            if cand in alive:
                tally[cand] += w
                break
    return tally


def _stv_winners(
    orders: Orders,
    weights: Weights,
    m: int,
    total: int,
    branch: bool,
) -> frozenset[int]:
    """Winner set of STV; branches elimination ties only when ``branch``.

    The lexicographic resolution eliminates the highest-id candidate among
    those tied for the lowest top-choice weight.
    """

    def round_(alive: frozenset[int]) -> frozenset[int]:
        tally = _top_tallies(orders, weights, m, alive)
        for cand in alive:
            if 2 * tally[cand] > total:
                return frozenset((cand,))
        least = min(tally[c] for c in alive)
        tied = [c for c in alive if tally[c] == least]
        if branch:
            out: set[int] = set()
            for cand in tied:
                out |= round_(alive - {cand})
            return frozenset(out)
        return round_(alive - {max(tied)})

    return round_(frozenset(range(m)))


def _runoff_winners(
    orders: Orders,
    weights: Weights,
    m: int,
    total: int,
    branch: bool,
) -> frozenset[int]:
    alive = frozenset(range(m))
    tally = _top_tallies(orders, weights, m, alive)
    for cand in range(m):
        if 2 * tally[cand] > total:
            return frozenset((cand,))
    if m == 2:
        finals = [frozenset(range(2))]
    elif branch:
        finals = []
        ranked = sorted(range(m), key=lambda c: (-tally[c], c))
        for i in range(m):
            for j in range(i + 1, m):
                pair = (ranked[i], ranked[j])
                cut = min(tally[pair[0]], tally[pair[1]])
                if all(tally[x] <= cut for x in range(m) if x not in pair):
                    finals.append(frozenset(pair))
    else:
        ranked = sorted(range(m), key=lambda c: (-tally[c], c))
        finals = [frozenset(ranked[:2])]
    counts = pairwise_counts(orders, weights, m)
    out: set[int] = set()
    for final in finals:
        a, b = sorted(final)
        d = 2 * counts[a][b] - total
        if branch:
            if d >= 0:
                out.add(a)
            if d <= 0:
                out.add(b)
        else:
            out.add(a if d > 0 else (b if d < 0 else a))
    return frozenset(out)


def _hybrid_winners(
    pairing: Pairing,
    orders: Orders,
    weights: Weights,
    m: int,
    total: int,
    branch: bool,
) -> frozenset[int]:
    counts = pairwise_counts(orders, weights, m)
    choice_sets: list[tuple[int, ...]] = []
    for a, b in pairing.pairs:
        d = 2 * counts[a][b] - total
        if d > 0:
            choice_sets.append((a,))
        elif d < 0:
            choice_sets.append((b,))
        elif branch:
            choice_sets.append((a, b))
        else:
            choice_sets.append((min(a, b),))
    if pairing.bye is not None:
        choice_sets.append((pairing.bye,))

    out: set[int] = set()

    def explore(idx: int, survivors: list[int]) -> None:
        if idx == len(choice_sets):
            alive = frozenset(survivors)
            tally = _top_tallies(orders, weights, m, alive)
            best = max(tally[c] for c in alive)
            winners = [c for c in alive if tally[c] == best]
            if branch:
                out.update(winners)
            else:
                out.add(min(winners))
            return
        for cand in choice_sets[idx]:
            survivors.append(cand)
            explore(idx + 1, survivors)
            survivors.pop()

    explore(0, [])
    return frozenset(out)


def _achievable_ids(
    rule: Rule,
    orders: Orders,
    weights: Weights,
    m: int,
    total: int,
    *,
    branch: bool = True,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> frozenset[int]:
    """Winner ids achievable over tie resolutions (or the lex singleton)."""
    if m == 1:
        return frozenset((0,))
    if isinstance(rule, Scoring):
        scores = _scoring_scores(orders, weights, m, rule.vector_for(m))
        winners = _argmax_set(scores)
        return winners if branch else frozenset((min(winners),))
    if isinstance(rule, (Copeland, Copeland2)):
        counts = pairwise_counts(orders, weights, m)
        sign = sign_matrix(counts, total)
        keys = (
            copeland2_keys_from_sign(sign)
            if isinstance(rule, Copeland2)
            else copeland_scores_from_sign(sign)
        )
        winners = _argmax_set(keys)
        return winners if branch else frozenset((min(winners),))
    if isinstance(rule, Cup):
        counts = pairwise_counts(orders, weights, m)
        sign = sign_matrix(counts, total)
        if branch:
            return cup_achievable_from_sign(rule.agenda, sign)
        return frozenset((cup_lex_from_sign(rule.agenda, sign),))
    if isinstance(rule, Stv):
        return _stv_winners(orders, weights, m, total, branch and m <= stv_branch_bound)
    if isinstance(rule, Runoff):
        return _runoff_winners(orders, weights, m, total, branch)
    if isinstance(rule, Hybrid):
        return _hybrid_winners(rule.pairing, orders, weights, m, total, branch)
    raise InvalidProfile(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Public interface


def _complete_arrays(profile: Profile) -> tuple[Orders, Weights, int, int]:
    orders, weights = profile.complete_arrays()
    total = profile.total_weight
    if total < 1:
        raise InvalidProfile("an election needs positive total weight")
    return orders, weights, profile.m, total


def achievable_winners(
    rule: Rule,
    profile: Profile,
    *,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> frozenset[Candidate]:
    """All candidates that win under some resolution of internal ties."""
    orders, weights, m, total = _complete_arrays(profile)
    validate_rule_for(rule, m)
    ids = _achievable_ids(
        rule, orders, weights, m, total, branch=True, stv_branch_bound=stv_branch_bound
    )
    return frozenset(profile.candidates[i] for i in ids)


def winner(
    rule: Rule,
    profile: Profile,
    tb: TieBreak | None = None,
    *,
    stv_branch_bound: int = DEFAULT_STV_BRANCH_BOUND,
) -> Candidate:
    """The unique winner with every internal tie resolved by the policy.

    Favor(c) resolves ties the way most helpful to c winning overall;
    Against(c) the way most harmful; when the policy's preference cannot be
    satisfied the lowest-id achievable candidate is returned.
    """
    tb = tb or TieBreak.lex()
    orders, weights, m, total = _complete_arrays(profile)
    validate_rule_for(rule, m)
    if tb.kind == "lex":
        ids = _achievable_ids(
            rule, orders, weights, m, total, branch=False, stv_branch_bound=stv_branch_bound
        )
        return profile.candidates[min(ids)]
    ids = _achievable_ids(
        rule, orders, weights, m, total, branch=True, stv_branch_bound=stv_branch_bound
    )
    if tb.candidate is None or tb.candidate not in range(m):
        raise InvalidProfile("tie-break candidate outside the profile")
    if tb.kind == "favor":
        chosen = tb.candidate if tb.candidate in ids else min(ids)
    else:
        rest = ids - {tb.candidate}
        chosen = min(rest) if rest else tb.candidate
    return profile.candidates[chosen]


def copeland_score(profile: Profile, candidate: int | Candidate) -> int:
    """Pairwise wins minus losses; ties contribute nothing."""
    orders, weights, m, total = _complete_arrays(profile)
    counts = pairwise_counts(orders, weights, m)
    sign = sign_matrix(counts, total)
    cand = _cand_id(candidate)
    return sum(sign[cand][j] for j in range(m) if j != cand)


def cup_winner(agenda: Agenda, profile: Profile, tb: TieBreak | None = None) -> Candidate:
    return winner(Cup(agenda), profile, tb)


def hybrid_winner(pairing: Pairing, profile: Profile, tb: TieBreak | None = None) -> Candidate:
    return winner(Hybrid(pairing), profile, tb)
