"""Interactive agents: arithmetic, providers, extraction and environments."""
from .arithmetic import (
    AddAgent, BitsumAgent, BrAgent, Div2Agent, InputAgent, MultAgent, SubAgent,
    TriAgent, add_agent, bitsum_agent, br_agent, div2_agent, mult_agent,
    sub_agent, tri_agent,
)
from .channels import Channel, ProviderBundle, ProviderFault
from .envs import IndexEnv, RandomEnv, ReplEnv, ScriptEnv, exhaustive_matches, parse_script
from .extract import ExtractedAgent, ExtractionError, extract_agent
from .providers import (
    AXIOMS, BoundEvalAgent, LiarSuccessor, NumeralAgent, OracleAgent, SlowStart,
    axiom_agent, bound_eval_agent, bound_eval_game, classical_reading,
    numeral_agent, numeral_game,
)
from .registry import (
    AGENT_NAMES, SpecError, canonical_provider, canonical_providers, make_agent,
    make_env,
)
