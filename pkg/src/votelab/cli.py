"""Command-line front end: parse profiles and rules, run one verb, print results.

Output is stable, line-oriented ``key: value`` text so scripts can consume
it.  Exit codes: 0 success, 2 parse or validation error, 3 search cap
exceeded, 4 operation applied outside its uncertainty model.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .completions import DEFAULT_COMPLETION_CAP
from .constructions import (
    REDUCTION_KINDS,
    PartitionInstance,
    gen_copeland_preference_manipulation,
    gen_cup_elicitation,
    gen_cup_preference_manipulation,
    gen_stv_sp_elicitation,
    verify_reduction,
)
from .elicitation import (
    coarse_elicitation_over,
    condorcet_winner_fixed,
    cup3_fine_over,
    cup_single_peaked_over,
    fine_elicitation_over,
    fine_sp_elicitation_over,
    hybrid_coarse_over,
    possible_winners,
)
from .errors import (
    CapExceeded,
    InvalidInstance,
    ModelMismatch,
    NotCompletableSP,
    ProfileParseError,
    VotelabError,
)
from .evaluation import EvaluationQuery, evaluate, win_probability
from .manipulation import (
    ManipulationInstance,
    coalition_manipulate,
    condorcet_coalition_manipulate,
    preference_manipulate,
)
from .profiles import Axis, Candidate, Profile, WeightedBallot
from .rules import Copeland, Cup, Hybrid, TieBreak, format_agenda, parse_rule, winner
from .textio import format_profile, parse_distribution, parse_profile


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_profile(args: argparse.Namespace) -> tuple[Profile, Axis | None]:
    return parse_profile(_read_text(args.profile), strict_odd=not args.no_strict_odd)


def _parse_tb(spec: str, by_label) -> TieBreak:
    if spec == "lex":
        return TieBreak.lex()
    if spec.startswith("favor:"):
        return TieBreak.favor(by_label(spec[len("favor:"):]).id)
    if spec.startswith("against:"):
        return TieBreak.against(by_label(spec[len("against:"):]).id)
    raise ProfileParseError(
        f"bad tie-break {spec!r}; expected lex, favor:<candidate> or against:<candidate>"
    )


def _answer(value: bool) -> None:
    print("answer: true" if value else "answer: false")


def _print_witness(profile: Profile) -> None:
    print("witness:")
    sys.stdout.write(format_profile(profile))


# ---------------------------------------------------------------------------
# Verbs


def cmd_winner(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    rule = parse_rule(args.rule, profile.candidates)
    tb = _parse_tb(args.tb, profile.by_label)
    print(f"winner: {winner(rule, profile, tb).label}")
    return 0


def cmd_coarse_over(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    rule = parse_rule(args.rule, profile.candidates)
    if isinstance(rule, Hybrid):
        result = hybrid_coarse_over(rule.pairing, profile)
    else:
        result = coarse_elicitation_over(rule, profile, cap=args.cap)
    _answer(result)
    return 0


def cmd_fine_over(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    rule = parse_rule(args.rule, profile.candidates)
    if isinstance(rule, Cup) and profile.m <= 3:
        result = cup3_fine_over(rule.agenda, profile)
    else:
        result = fine_elicitation_over(rule, profile, cap=args.cap)
    _answer(result)
    return 0


def cmd_fine_sp_over(args: argparse.Namespace) -> int:
    profile, axis = _load_profile(args)
    if axis is None:
        raise ProfileParseError("the profile file must carry an axis: line")
    rule = parse_rule(args.rule, profile.candidates)
    if isinstance(rule, Cup):
        result = cup_single_peaked_over(profile, axis)
    else:
        result = fine_sp_elicitation_over(rule, profile, axis, cap=args.cap)
    _answer(result)
    return 0


def cmd_condorcet_fixed(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    status = condorcet_winner_fixed(profile)
    if status.kind == "true":
        print("answer: true")
        print(f"winner: {status.winner.label}")
    elif status.kind == "false":
        print("answer: false")
    else:
        print("answer: not-determined")
    return 0


def cmd_possible_winners(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    rule = parse_rule(args.rule, profile.candidates)
    ids = sorted(possible_winners(rule, profile, cap=args.cap), key=lambda c: c.id)
    print("possible: " + " ".join(c.label for c in ids))
    return 0


def _coalition_indices(spec: str) -> frozenset[int]:
    try:
        indices = frozenset(int(piece) for piece in spec.split(",") if piece.strip())
    except ValueError:
        raise InvalidInstance(f"bad coalition {spec!r}; expected indices like 0,2,5")
    if not indices:
        raise InvalidInstance("the coalition cannot be empty")
    return indices


def cmd_manipulate_coalition(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    target = profile.by_label(args.target)
    coalition = _coalition_indices(args.coalition)
    if args.rule == "condorcet":
        inst = ManipulationInstance(Copeland(), target, profile, coalition)
        result = condorcet_coalition_manipulate(inst)
    else:
        rule = parse_rule(args.rule, profile.candidates)
        inst = ManipulationInstance(rule, target, profile, coalition)
        result = coalition_manipulate(inst, cap=args.cap)
    if result is None:
        _answer(False)
        return 0
    ballots = list(profile.ballots)
    for idx, order in result.items():
        ballots[idx] = WeightedBallot(order, profile.ballots[idx].weight)
    completed = Profile(
        candidates=profile.candidates,
        ballots=tuple(ballots),
        unknown_weight=profile.unknown_weight,
        strict_odd=profile.strict_odd,
    )
    _answer(True)
    _print_witness(completed)
    return 0


def cmd_manipulate_prefs(args: argparse.Namespace) -> int:
    profile, _ = _load_profile(args)
    target = profile.by_label(args.target)
    rule = parse_rule(args.rule, profile.candidates)
    inst = ManipulationInstance(rule, target, profile)
    witness = preference_manipulate(inst, cap=args.cap)
    if witness is None:
        _answer(False)
        return 0
    _answer(True)
    _print_witness(witness)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    dist = parse_distribution(
        _read_text(args.distribution), strict_odd=not args.no_strict_odd
    )
    cands = dist.candidates

    def by_label(label: str) -> Candidate:
        for cand in cands:
            if cand.label == label:
                return cand
        raise ProfileParseError(f"no candidate labelled {label!r}")

    target = by_label(args.target)
    rule = parse_rule(args.rule, cands)
    tb = _parse_tb(args.tb, by_label)
    try:
        threshold = Fraction(args.r)
    except (ValueError, ZeroDivisionError):
        raise ProfileParseError(f"bad threshold {args.r!r}; expected a rational like 1/2")
    query = EvaluationQuery(target=target, r=threshold, rule=rule, tb=tb)
    _answer(evaluate(dist, query))
    print(f"probability: {win_probability(dist, rule, target, tb)}")
    return 0


def _reduction_text(kind: str, p: PartitionInstance, balanced: bool) -> str:
    bag = " ".join(str(v) for v in p.numbers)
    if kind == "cup-elicit":
        profile, agenda = gen_cup_elicitation(p, balanced=balanced)
        rule = "cup:" + format_agenda(agenda, profile.candidates)
        header = [f"# kind: {kind}", f"# bag: {bag}", f"# rule: {rule}"]
        body = format_profile(profile)
    elif kind == "stv-sp-elicit":
        profile, axis = gen_stv_sp_elicitation(p)
        header = [f"# kind: {kind}", f"# bag: {bag}", "# rule: stv"]
        body = format_profile(profile, axis)
    elif kind == "cup-manip":
        inst = gen_cup_preference_manipulation(p)
        rule = "cup:" + format_agenda(inst.rule.agenda, inst.profile.candidates)
        header = [
            f"# kind: {kind}",
            f"# bag: {bag}",
            f"# rule: {rule}",
            f"# target: {inst.target.label}",
        ]
        body = format_profile(inst.profile)
    elif kind == "copeland-manip":
        inst = gen_copeland_preference_manipulation(p)
        header = [
            f"# kind: {kind}",
            f"# bag: {bag}",
            "# rule: copeland",
            f"# target: {inst.target.label}",
            "# note: even total; parse with --no-strict-odd",
        ]
        body = format_profile(inst.profile)
    else:
        raise InvalidInstance(
            f"unknown reduction kind {kind!r}; expected one of {', '.join(REDUCTION_KINDS)}"
        )
    return "\n".join(header) + "\n" + body


def cmd_gen_reduction(args: argparse.Namespace) -> int:
    p = PartitionInstance.parse(args.bag)
    if args.balanced and args.kind != "cup-elicit":
        raise InvalidInstance("--balanced applies only to the cup-elicit kind")
    text = _reduction_text(args.kind, p, args.balanced)
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote: {args.output}")
    return 0


def _sweep_bags(max_n: int, max_v: int):
    for n in range(1, max_n + 1):
        for combo in combinations_with_replacement(range(1, max_v + 1), n):
            if sum(combo) % 2 == 0:
                yield combo


def cmd_verify_reduction(args: argparse.Namespace) -> int:
    if args.kind == "all":
        kinds = REDUCTION_KINDS
    elif args.kind in REDUCTION_KINDS:
        kinds = (args.kind,)
    else:
        raise InvalidInstance(
            f"unknown reduction kind {args.kind!r}; expected one of "
            f"{', '.join(REDUCTION_KINDS)} or all"
        )
    sweep = args.max_n is not None or args.max_v is not None
    if (args.bag is None) == (not sweep):
        raise InvalidInstance("give either --bag or both --max-n and --max-v")
    if sweep and (args.max_n is None or args.max_v is None):
        raise InvalidInstance("sweep mode needs both --max-n and --max-v")

    if not sweep:
        p = PartitionInstance.parse(args.bag)
        for kind in kinds:
            report = verify_reduction(kind, p, cap=args.cap)
            print(f"kind: {report.kind}")
            print("bag: " + " ".join(str(v) for v in report.numbers))
            _print_bool("decision", report.decision)
            _print_bool("partition", report.partition)
            print(f"biconditional: {'holds' if report.holds else 'fails'}")
        return 0

    failures = 0
    for kind in kinds:
        checked = 0
        broken = 0
        for bag in _sweep_bags(args.max_n, args.max_v):
            report = verify_reduction(kind, PartitionInstance(bag), cap=args.cap)
            checked += 1
            if not report.holds:
                broken += 1
                print(f"# fails: {kind} bag " + " ".join(map(str, bag)), file=sys.stderr)
        print(f"kind: {kind}")
        print(f"checked: {checked}")
        print(f"failures: {broken}")
        failures += broken
    print(f"biconditional: {'holds' if failures == 0 else 'fails'}")
    return 0


def _print_bool(key: str, value: bool) -> None:
    print(f"{key}: {'true' if value else 'false'}")


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--no-strict-odd",
        action="store_true",
        help="allow even total weight (pairwise ties become possible)",
    )
    common.add_argument(
        "--single-thread",
        action="store_true",
        help="force deterministic sequential search (searches are sequential "
        "and deterministic regardless; accepted for script stability)",
    )

    parser = argparse.ArgumentParser(
        prog="votelab",
        description="Weighted-vote election analysis: winners, elicitation "
        "termination, manipulation, evaluation, hardness constructions.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name: str, func, help_text: str, *, profile: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if profile:
            sp.add_argument("profile", help="profile file (- for stdin)")
        sp.set_defaults(func=func)
        return sp

    def add_cap(sp: argparse.ArgumentParser) -> None:
        sp.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_COMPLETION_CAP,
            help="completion-search budget (default 10^6)",
        )

    sp = add("winner", cmd_winner, "winner of a complete profile")
    sp.add_argument("--rule", required=True, help="e.g. plurality, stv, cup:((A,B),C)")
    sp.add_argument("--tb", default="lex", help="lex, favor:<cand> or against:<cand>")

    sp = add("coarse-over", cmd_coarse_over, "can unknown whole ballots still change the winner?")
    sp.add_argument("--rule", required=True)
    add_cap(sp)

    sp = add("fine-over", cmd_fine_over, "can unknown pairwise preferences still change the winner?")
    sp.add_argument("--rule", required=True)
    add_cap(sp)

    sp = add(
        "fine-sp-over",
        cmd_fine_sp_over,
        "fine-over restricted to single-peaked completions (profile needs an axis: line)",
    )
    sp.add_argument("--rule", required=True)
    add_cap(sp)

    add("condorcet-fixed", cmd_condorcet_fixed, "is the Condorcet winner already determined?")

    sp = add("possible-winners", cmd_possible_winners, "candidates winning in some completion")
    sp.add_argument("--rule", required=True)
    add_cap(sp)

    sp = add(
        "manipulate-coalition",
        cmd_manipulate_coalition,
        "orders for a coalition that make the target win",
    )
    sp.add_argument("--rule", required=True, help="a rule, or condorcet for Condorcet-winner manipulation")
    sp.add_argument("--target", required=True, help="candidate label")
    sp.add_argument("--coalition", required=True, help="ballot indices, e.g. 0,2,5")
    add_cap(sp)

    sp = add(
        "manipulate-prefs",
        cmd_manipulate_prefs,
        "completion of unlocked pairs that makes the target win",
    )
    sp.add_argument("--rule", required=True)
    sp.add_argument("--target", required=True)
    add_cap(sp)

    sp = sub.add_parser(
        "evaluate",
        parents=[common],
        help="does the target's win probability exceed a threshold?",
    )
    sp.add_argument("distribution", help="distribution file (- for stdin)")
    sp.add_argument("--rule", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--r", required=True, help="threshold, a rational like 1/2")
    sp.add_argument("--tb", default="lex")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser(
        "gen-reduction",
        parents=[common],
        help="emit a bag-splitting election instance",
    )
    sp.add_argument("--kind", required=True, help=", ".join(REDUCTION_KINDS))
    sp.add_argument("--bag", required=True, help="comma-separated positive integers, even total")
    sp.add_argument("--balanced", action="store_true", help="balanced agenda variant (cup-elicit)")
    sp.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    sp.set_defaults(func=cmd_gen_reduction)

    sp = sub.add_parser(
        "verify-reduction",
        parents=[common],
        help="check generated instances against a brute-force partition oracle",
    )
    sp.add_argument("--kind", required=True, help=", ".join(REDUCTION_KINDS) + ", or all")
    sp.add_argument("--bag", default=None)
    sp.add_argument("--max-n", type=int, default=None, help="sweep bags up to this size")
    sp.add_argument("--max-v", type=int, default=None, help="sweep values up to this bound")
    add_cap(sp)
    sp.set_defaults(func=cmd_verify_reduction)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ModelMismatch, NotCompletableSP) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (VotelabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
