"""Energy-constrained link scheduling: greedy policies, capacity-region and
pooling-factor analyses, and a slotted-time simulator for wireless networks
under binary interference and average-power budgets.
"""

from .capacity import (
    FeasibleAllocation,
    RegionResult,
    boundary_scale,
    enumerate_feasible_allocations,
    max_admissible_rate,
    membership,
)
from .lpf import LpfResult, PoolingWitness, check_sigma_pair, lpf, sigma_for_subgraph
from .netmodel import (
    ConflictNetwork,
    EnumerationCapError,
    build_conflict_sets,
    enumerate_maximal_activations,
    is_feasible_power_vector,
)
from .ratepower import (
    LinkRadio,
    RatePowerCurve,
    optimal_power_for_link,
    rate_for_power,
    validate_convexity,
)
from .schedulers import (
    POLICIES,
    PowerDecision,
    SchedulerInput,
    gecs_decide,
    gms_fixed_power_decide,
    gmw_decide,
    maxweight_decide,
)
from .sim import (
    ArrivalProcess,
    ComplianceReport,
    QueueState,
    RunMetrics,
    Scenario,
    power_compliance,
    run,
    stability_verdict,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "ArrivalProcess",
    "ComplianceReport",
    "ConflictNetwork",
    "EnumerationCapError",
    "FeasibleAllocation",
    "LinkRadio",
    "LpfResult",
    "POLICIES",
    "PoolingWitness",
    "PowerDecision",
    "QueueState",
    "RatePowerCurve",
    "RegionResult",
    "RunMetrics",
    "Scenario",
    "SchedulerInput",
    "boundary_scale",
    "build_conflict_sets",
    "check_sigma_pair",
    "enumerate_feasible_allocations",
    "enumerate_maximal_activations",
    "gecs_decide",
    "gms_fixed_power_decide",
    "gmw_decide",
    "is_feasible_power_vector",
    "lpf",
    "max_admissible_rate",
    "maxweight_decide",
    "membership",
    "optimal_power_for_link",
    "power_compliance",
    "rate_for_power",
    "run",
    "sigma_for_subgraph",
    "stability_verdict",
    "step",
    "validate_convexity",
]
