"""Sequent calculus kernel: sequents, stability, rules and proofs."""
from .sequent import SUCCEDENT, Sequent, antecedent_index, parse_sequent, sequent_alpha_eq
from .stability import (
    DEFAULT_BUDGET, INVALID, UNKNOWN, VALID, StabilityResult, consistent,
    sequent_formula, stability,
)
from .rules import (
    Address, RuleError, RuleReport, check_choose, check_replicate, check_wait,
    machine_owner, occurrences, parse_address, parse_instance, replace,
)
from .proof import (
    ACCEPTED, OBLIGATIONS, REJECTED, Cl12Proof, Justification, LineResult,
    ProofLine, ProofReport, ProofSyntaxError, check_line, check_proof, load_proof,
    parse_justification, parse_proof,
)
