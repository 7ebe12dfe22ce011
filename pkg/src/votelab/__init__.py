"""Weighted-vote election analysis.

Winners under positional, pairwise and elimination rules; termination
tests for coarse and fine preference elicitation; coalition and
preference manipulation; exact win probabilities over vote scenarios;
and generators tying each hard question to number partitioning.
"""

from .completions import (
    DEFAULT_COMPLETION_CAP,
    OptionGroup,
    completion_groups,
    completed_profile,
    iter_assignments,
    space_size,
)
from .constructions import (
    REDUCTION_KINDS,
    PartitionInstance,
    ReductionReport,
    gen_copeland_preference_manipulation,
    gen_cup_elicitation,
    gen_cup_preference_manipulation,
    gen_stv_sp_elicitation,
    has_equal_partition,
    has_equal_partition_dp,
    verify_reduction,
)
from .elicitation import (
    CondorcetStatus,
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
    InvalidDistribution,
    InvalidInstance,
    InvalidProfile,
    ModelMismatch,
    NotCompletableSP,
    ProfileParseError,
    VotelabError,
)
from .evaluation import (
    EvaluationQuery,
    ScenarioDistribution,
    evaluate,
    product_distribution,
    reduction_from_preference_manipulation,
    win_probability,
)
from .manipulation import (
    ManipulationInstance,
    coalition_manipulate,
    condorcet_coalition_manipulate,
    preference_manipulate,
)
from .profiles import (
    Axis,
    Candidate,
    MajorityMatrix,
    PartialBallot,
    Profile,
    WeightedBallot,
    candidates_from_labels,
    is_single_peaked,
    linear_extensions,
    majority_matrix,
    single_peaked_condorcet_winner,
    single_peaked_extensions,
    single_peaked_orders,
    sp_completable,
    transitive_closure,
)
from .rules import (
    Agenda,
    Copeland,
    Copeland2,
    Cup,
    Hybrid,
    Pairing,
    Runoff,
    Rule,
    Scoring,
    ScoringVector,
    Stv,
    TieBreak,
    achievable_winners,
    agenda_leaves,
    borda,
    copeland_score,
    cup_winner,
    format_agenda,
    format_rule,
    hybrid_winner,
    is_balanced,
    parse_rule,
    plurality,
    veto,
    winner,
)
from .textio import (
    format_distribution,
    format_profile,
    parse_distribution,
    parse_profile,
)

__version__ = "0.1.0"

__all__ = [
    "Agenda",
    "Axis",
    "Candidate",
    "CapExceeded",
    "CondorcetStatus",
    "Copeland",
    "Copeland2",
    "Cup",
    "DEFAULT_COMPLETION_CAP",
    "EvaluationQuery",
    "Hybrid",
    "InvalidDistribution",
    "InvalidInstance",
    "InvalidProfile",
    "MajorityMatrix",
    "ManipulationInstance",
    "ModelMismatch",
    "NotCompletableSP",
    "OptionGroup",
    "Pairing",
    "PartialBallot",
    "PartitionInstance",
    "Profile",
    "ProfileParseError",
    "REDUCTION_KINDS",
    "ReductionReport",
    "Rule",
    "Runoff",
    "ScenarioDistribution",
    "Scoring",
    "ScoringVector",
    "Stv",
    "TieBreak",
    "VotelabError",
    "WeightedBallot",
    "achievable_winners",
    "agenda_leaves",
    "borda",
    "candidates_from_labels",
    "coalition_manipulate",
    "coarse_elicitation_over",
    "completed_profile",
    "completion_groups",
    "condorcet_coalition_manipulate",
    "condorcet_winner_fixed",
    "copeland_score",
    "cup3_fine_over",
    "cup_single_peaked_over",
    "cup_winner",
    "evaluate",
    "fine_elicitation_over",
    "fine_sp_elicitation_over",
    "format_agenda",
    "format_distribution",
    "format_profile",
    "format_rule",
    "gen_copeland_preference_manipulation",
    "gen_cup_elicitation",
    "gen_cup_preference_manipulation",
    "gen_stv_sp_elicitation",
    "has_equal_partition",
    "has_equal_partition_dp",
    "hybrid_coarse_over",
    "hybrid_winner",
    "is_balanced",
    "is_single_peaked",
    "iter_assignments",
    "linear_extensions",
    "majority_matrix",
    "parse_distribution",
    "parse_profile",
    "parse_rule",
    "plurality",
    "possible_winners",
    "preference_manipulate",
    "product_distribution",
    "reduction_from_preference_manipulation",
    "single_peaked_condorcet_winner",
    "single_peaked_extensions",
    "single_peaked_orders",
    "sp_completable",
    "space_size",
    "transitive_closure",
    "veto",
    "verify_reduction",
    "win_probability",
    "winner",
]
