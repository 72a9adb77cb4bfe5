"""Possible-worlds workbench for two-region counterfactual reasoning.

Builds probability tables from a two-qubit configuration, filters the
sixteen world histories to the physically possible ones, evaluates
material, strict, and counterfactual conditionals over them, and audits
the built-in fourteen-line derivation rule by rule.
"""

from .formula import (
    Atom,
    And,
    Counterfactual,
    Formula,
    LexError,
    MatImp,
    Not,
    Or,
    ParseError,
    StrictImp,
    check_paper_normal,
    parse,
    unparse,
)
from .worlds import (
    DegenerateModelError,
    Model,
    ProbabilityTable,
    TableError,
    World,
    build_model,
    enumerate_worlds,
    load_model,
    parse_world,
    satisfies_atom,
    save_model,
)
from .quantum import (
    HardyConfig,
    PredictionReport,
    SearchError,
    SearchParams,
    export_table,
    find_hardy,
    joint_probability,
    load_config,
    save_config,
    verify_hardy,
)
from .semantics import (
    CfOptions,
    GlobalCheck,
    TemporalOrder,
    TheoremReport,
    UnsupportedCounterfactualError,
    accessible,
    check_theorem,
    eval_at,
    holds_globally,
)
from .proof import (
    AuditReport,
    ProofLine,
    ProofScript,
    RuleVerdict,
    audit,
    builtin_script,
    check_rule,
    sr_truth_table,
)

__version__ = "0.1.0"
