"""Tail bounds, exact oracles and entropy audits for read-k families.

A read-k family is a collection of Boolean functions of independent
finite random variables in which every variable influences at most k of
the functions. The package models such families explicitly, computes the
exact distribution of their function sum, evaluates the Chernoff-style
closed-form tail bounds with exponent divided by k, and numerically
audits the entropy inequalities those bounds rest on.
"""

from .audit import (
    CHAIN_REL_TOL,
    ProofTrace,
    conditional_law,
    proof_trace,
    shearer_entropy_gap,
    shearer_kl_gap,
)
from .bounds import (
    BoundQuery,
    BoundResult,
    read_k_tail_bound,
    shearer_and_bound,
    simplified_tail_bound,
)
from .errors import AuditError, DomainError, ReadkError, ResourceError, ValidationError
from .exact import (
    DEFAULT_GUARD,
    Marginals,
    SumPmf,
    TailQuery,
    conditional_function_marginals,
    enumeration_guard,
    function_marginals,
    sum_pmf,
    sum_pmf_enumerate,
    tail_prob,
)
from .family import (
    Component,
    FamilySpec,
    ReadFunction,
    Variable,
    dependency_components,
    eval_function,
    family_from_json,
    family_to_json,
    load_family,
    read_width,
    save_family,
)
from .generators import gen_block_tight, gen_random_family
from .info_theory import (
    Distribution,
    Nats,
    conditional_entropy,
    entropy,
    kl_binary,
    kl_divergence,
    project,
    push_forward,
)
from .sampler import McEstimate, estimate_tail, sample_assignment

__version__ = "0.1.0"

__all__ = [
    "AuditError",
    "BoundQuery",
    "BoundResult",
    "CHAIN_REL_TOL",
    "Component",
    "DEFAULT_GUARD",
    "Distribution",
    "DomainError",
    "FamilySpec",
    "Marginals",
    "McEstimate",
    "Nats",
    "ProofTrace",
    "ReadFunction",
    "ReadkError",
    "ResourceError",
    "SumPmf",
    "TailQuery",
    "ValidationError",
    "Variable",
    "conditional_entropy",
    "conditional_function_marginals",
    "conditional_law",
    "dependency_components",
    "entropy",
    "enumeration_guard",
    "estimate_tail",
    "eval_function",
    "family_from_json",
    "family_to_json",
    "function_marginals",
    "gen_block_tight",
    "gen_random_family",
    "kl_binary",
    "kl_divergence",
    "load_family",
    "project",
    "proof_trace",
    "push_forward",
    "read_k_tail_bound",
    "read_width",
    "sample_assignment",
    "save_family",
    "shearer_and_bound",
    "shearer_entropy_gap",
    "shearer_kl_gap",
    "simplified_tail_bound",
    "sum_pmf",
    "sum_pmf_enumerate",
    "tail_prob",
]
