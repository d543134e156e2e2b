"""Standard-model evaluation, adjudication and metered matches."""
from .evaluate import (
    DEFAULT_RULES, FALSE, TRUE, UNKNOWN, Evaluator, eval_closed_term,
    eval_elementary, eval_term,
)
from .match import (
    Agent, MatchConfig, MatchResult, Meter, Pass, Silent, Verdict, adjudicate,
    run_match,
)
