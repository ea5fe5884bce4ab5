"""Monetary policy when potential output growth depends on inflation.

Potential output grows fastest when expected inflation sits at the MOGIR
(maximizing output growth inflation rate). The package derives the optimal
rules for pure stabilization, growth maximization and strict inflation
targeting. It simulates the economy under each rule and checks the closed
forms against numerical oracles.
"""

from mogir.analytics import (
    LawOfMotion,
    LongRunMoments,
    expected_growth,
    law_of_motion,
    longrun_moments,
    loss_value,
)
from mogir.comparison import ComparisonReport, compare_strategies, demonstrate_time_inconsistency
from mogir.model_core import (
    EconState,
    ModelParams,
    ShockDraw,
    potential_output_step,
    reduced_form_step,
    structural_fixed_point,
    validate_params,
)
from mogir.policy import (
    Objective,
    PolicyRule,
    Strategy,
    apply_rule,
    growth_max_rule,
    inflation_targeting_rule,
    numeric_optimal_rate,
    satisfies_taylor_principle,
    stabilization_rule,
)
from mogir.simulation import (
    MomentEstimate,
    SimConfig,
    estimate_moments,
    generate_shocks,
    simulate,
    simulate_path,
)

__version__ = "0.1.0"
