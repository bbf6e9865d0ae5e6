"""Group activity selection on social networks: solvers, verifiers,
oracles and hardness-reduction instance generators.

Players sit on a graph, every group doing an activity must induce a
connected subgraph, and preferences are anonymous weak orders over
(activity, group size) pairs.  The package decides Nash, individual and
core stability with exact specialized algorithms, all cross-checked
against a brute-force oracle and certified by deviation/blocking
verifiers.
"""

from .concepts import Concept
from .errors import (
    BudgetExceededError,
    DispatchError,
    GgaspError,
    NotIndividuallyRationalError,
    ValidationError,
)
from .instance import (
    VOID,
    ActivityEntry,
    Alternative,
    Assignment,
    Instance,
    dump,
    dumps,
    load,
    loads,
    make_instance,
)
from .dispatch import Guards, SolveOutcome, choose_algorithm, solve

__all__ = [
    "Concept",
    "GgaspError",
    "ValidationError",
    "DispatchError",
    "BudgetExceededError",
    "NotIndividuallyRationalError",
    "VOID",
    "ActivityEntry",
    "Alternative",
    "Assignment",
    "Instance",
    "load",
    "loads",
    "dump",
    "dumps",
    "make_instance",
    "Guards",
    "SolveOutcome",
    "choose_algorithm",
    "solve",
]

__version__ = "0.1.0"
