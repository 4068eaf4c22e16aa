"""Erasure codes with cooperative locality: fields, codes, repair, graphs."""

from .bounds import BoundReport, dmin_bound
from .code import (
    LinearCode,
    LocalityCertificate,
    RepairReport,
    code_from_json,
    code_to_json,
    disjoint_groups_schedule,
    encode,
    express_columns,
    is_codeword,
    load_code,
    locality_oracle,
    min_distance_oracle,
    minimal_repair_set,
    puncture,
    repair_set_check,
    repair_values,
    save_code,
    shorten,
)
from .constructions import (
    ConcatenationParams,
    RepairCostProfile,
    concatenated_code,
    envelope_optimize,
    hadamard_code,
    hadamard_repair,
    partition_code,
    product_code,
    profile_from_cost,
    rs_mds,
)
from .errors import BudgetExceeded, CoopLRCError, RepairFailure, UncorrectableErasure
from .field import Field
from .graph_codes import (
    DecodeTrace,
    edge_code,
    expander_distance_bound,
    expander_repair,
    girth_distance_bound,
    peeling_repair,
    unbalanced_expander_code,
    zemor_code,
    zemor_cover,
    zemor_decode,
    zemor_feasible_epsilon,
)
from .graphs import (
    BipartiteGraph,
    ExpansionCertificate,
    Graph,
    SpectralData,
    double_cover,
    expansion_check,
    girth,
    graph_from_text,
    graph_to_text,
    heawood_graph,
    high_girth_library,
    lambda2,
    mixing_check,
)
from .matrix import MatrixGF
from .sim import (
    RepairStrategy,
    SweepReport,
    adversarial_sweep,
    apply_strategy,
    bandwidth_account,
    group_tolerance_probability,
    random_sweep,
)
from .witness import WitnessTrace, subcode_witness

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "BoundReport",
    "BudgetExceeded",
    "ConcatenationParams",
    "CoopLRCError",
    "DecodeTrace",
    "ExpansionCertificate",
    "Field",
    "Graph",
    "LinearCode",
    "LocalityCertificate",
    "MatrixGF",
    "RepairCostProfile",
    "RepairFailure",
    "RepairReport",
    "RepairStrategy",
    "SpectralData",
    "SweepReport",
    "UncorrectableErasure",
    "WitnessTrace",
    "adversarial_sweep",
    "apply_strategy",
    "bandwidth_account",
    "code_from_json",
    "code_to_json",
    "concatenated_code",
    "disjoint_groups_schedule",
    "dmin_bound",
    "double_cover",
    "edge_code",
    "encode",
    "envelope_optimize",
    "expander_distance_bound",
    "expander_repair",
    "expansion_check",
    "express_columns",
    "girth",
    "girth_distance_bound",
    "graph_from_text",
    "graph_to_text",
    "group_tolerance_probability",
    "hadamard_code",
    "hadamard_repair",
    "heawood_graph",
    "high_girth_library",
    "is_codeword",
    "lambda2",
    "load_code",
    "locality_oracle",
    "min_distance_oracle",
    "minimal_repair_set",
    "mixing_check",
    "partition_code",
    "peeling_repair",
    "product_code",
    "profile_from_cost",
    "puncture",
    "random_sweep",
    "repair_set_check",
    "repair_values",
    "rs_mds",
    "save_code",
    "shorten",
    "subcode_witness",
    "unbalanced_expander_code",
    "zemor_code",
    "zemor_cover",
    "zemor_decode",
    "zemor_feasible_epsilon",
]
