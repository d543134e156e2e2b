"""The CLA11 theory layer: axioms, rules, theory configs and proof checking."""
from .axioms import (
    CHOICE_AXIOMS, NOT_AN_AXIOM, PEANO, AxiomKind, induction_instance, recognize_axiom,
)
from .config import ConfigError, TheoryParams, default_theory, load_theory, parse_theory
from .proof import (
    ACCEPTED, OBLIGATIONS, REJECTED, Cla11Justification, Cla11Line, Cla11LineResult,
    Cla11Proof, Cla11Report, check_cla11_line, check_theory_proof, load_cla11_proof,
    parse_cla11_justification, parse_cla11_proof,
)
from .rules import (
    Boundedness, ComprehensionParams, InductionParams, RuleCheck, bound_of,
    check_comprehension, check_induction, check_lc, comprehension_conclusion,
    comprehension_formula, induction_formula, is_bounded_formula, matches_closure,
    strip_closure, strip_lengths, weaken_step,
)
