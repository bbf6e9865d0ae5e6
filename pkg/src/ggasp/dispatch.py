"""Algorithm roster and automatic selection.

Selection order: copyable solvers on copyable forests, then the tree DPs,
the clique flow solvers, the small-component DP, the special core solvers,
and finally the brute-force oracle, each behind its guard.  Every solver's
precondition is asserted before it runs, and every returned assignment is
re-certified by the matching verifier.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import copyable, core_solvers, flow, fpt, oracle, treedp, verify
from .concepts import Concept
from .errors import DispatchError, GgaspError
from .graphs import classify, count_connected_subsets
from .instance import Assignment, Instance


@dataclass(frozen=True)
class Guards:
    max_p_tree: int = treedp.MAX_P_DEFAULT
    max_component: int = fpt.MAX_COMPONENT_DEFAULT
    max_p_component: int = fpt.MAX_P_DEFAULT
    max_p_clique: int = flow.MAX_P_DEFAULT
    subset_budget: int = core_solvers.SUBSET_BUDGET
    brute_budget: int = oracle.DEFAULT_BUDGET


ALGORITHMS = (
    "brute",
    "copyable-core",
    "copyable-is",
    "copyable-ns",
    "small-comp",
    "tree-ns",
    "tree-is",
    "clique-flow",
    "core-single",
    "core-subsets",
)


@dataclass
class SolveOutcome:
    concept: Concept
    algorithm: str
    assignment: Assignment | None

    @property
    def exists(self) -> bool:
        return self.assignment is not None


def _kappa_within(inst: Instance, budget: int) -> bool:
    p = inst.p
    if p == 0:
        return True
    cap = int(round(budget ** (1.0 / p))) + 1
    kappa = count_connected_subsets(inst.graph, cap)
    return kappa is not None and (kappa + 1) ** p <= budget


def choose_algorithm(inst: Instance, concept, guards: Guards = Guards()) -> str:
    """Pick the preferred applicable algorithm, or raise DispatchError
    naming every violated guard."""
    concept = Concept.parse(concept)
    cls = classify(inst.graph)
    _, all_copyable = inst.copyable_classes()
    reasons = []
    if all_copyable and cls.forest:
        return f"copyable-{concept.value}"
    reasons.append("not a copyable forest")
    if cls.forest and concept in (Concept.NASH, Concept.INDIVIDUAL):
        if inst.p <= guards.max_p_tree:
            return f"tree-{concept.value}"
        reasons.append(f"forest but p={inst.p} > max_p_tree={guards.max_p_tree}")
    if cls.clique and concept in (Concept.NASH, Concept.INDIVIDUAL):
        if inst.p <= guards.max_p_clique and (inst.n + 1) ** (inst.p + 1) <= flow.VECTOR_BUDGET_DEFAULT:
            return "clique-flow"
        reasons.append(
            f"clique but p={inst.p} / (n+1)^(p+1) exceed the flow guards "
            f"(max_p_clique={guards.max_p_clique})"
        )
    if cls.max_component <= guards.max_component and inst.p <= guards.max_p_component:
        return "small-comp"
    reasons.append(
        f"components up to {cls.max_component} / p={inst.p} exceed small-component guards "
        f"({guards.max_component}, {guards.max_p_component})"
    )
    if concept is Concept.CORE:
        if inst.p == 1:
            return "core-single"
        reasons.append("more than one activity, core-single not applicable")
        if _kappa_within(inst, guards.subset_budget):
            return "core-subsets"
        reasons.append("too many connected subsets for the core enumeration budget")
    if (inst.p + 1) ** inst.n <= guards.brute_budget:
        return "brute"
    reasons.append(f"(p+1)^n = {(inst.p + 1) ** inst.n} exceeds the brute budget")
    raise DispatchError("no applicable algorithm: " + "; ".join(reasons))


def _check_preconditions(inst: Instance, concept: Concept, algorithm: str, guards: Guards):
    cls = classify(inst.graph)
    _, all_copyable = inst.copyable_classes()
    need = {
        "copyable-core": concept is Concept.CORE,
        "copyable-is": concept is Concept.INDIVIDUAL,
        "copyable-ns": concept is Concept.NASH,
        "tree-ns": concept is Concept.NASH,
        "tree-is": concept is Concept.INDIVIDUAL,
        "clique-flow": concept in (Concept.NASH, Concept.INDIVIDUAL),
        "core-single": concept is Concept.CORE,
        "core-subsets": concept is Concept.CORE,
        "small-comp": True,
        "brute": True,
    }
    if algorithm not in need:
        raise DispatchError(f"unknown algorithm {algorithm!r}")
    if not need[algorithm]:
        raise DispatchError(f"{algorithm} does not decide {concept.value} stability")
    if algorithm.startswith("copyable") and not (all_copyable and cls.forest):
        raise DispatchError(f"{algorithm} needs a copyable forest")
    if algorithm.startswith("tree") and not cls.forest:
        raise DispatchError(f"{algorithm} needs an acyclic graph")
    if algorithm == "clique-flow" and not cls.clique:
        raise DispatchError("clique-flow needs a complete graph")
    if algorithm == "core-single" and inst.p != 1:
        raise DispatchError("core-single needs exactly one non-void activity")


def run_algorithm(inst: Instance, concept, algorithm: str, guards: Guards = Guards()):
    concept = Concept.parse(concept)
    _check_preconditions(inst, concept, algorithm, guards)
    if algorithm == "brute":
        return oracle.brute_solve(inst, concept, guards.brute_budget)
    if algorithm == "copyable-core":
        return copyable.core_copyable(inst)
    if algorithm == "copyable-is":
        return copyable.is_copyable(inst)
    if algorithm == "copyable-ns":
        return copyable.ns_copyable(inst)
    if algorithm == "small-comp":
        return fpt.solve_small_components(
            inst, concept, max_component=guards.max_component, max_p=guards.max_p_component
        )
    if algorithm == "tree-ns":
        return treedp.ns_tree(inst, max_p=guards.max_p_tree)
    if algorithm == "tree-is":
        return treedp.is_tree(inst, max_p=guards.max_p_tree)
    if algorithm == "clique-flow":
        if concept is Concept.NASH:
            return flow.ns_clique(inst, max_p=guards.max_p_clique)
        return flow.is_clique(inst, max_p=guards.max_p_clique)
    if algorithm == "core-single":
        return core_solvers.core_single_activity(inst)
    if algorithm == "core-subsets":
        return core_solvers.core_connected_subsets(inst, guards.subset_budget)
    raise DispatchError(f"unknown algorithm {algorithm!r}")


def solve(inst: Instance, concept, algorithm: str = "auto", guards: Guards = Guards()) -> SolveOutcome:
    """Solve and certify: any returned assignment must pass its verifier."""
    concept = Concept.parse(concept)
    if algorithm == "auto":
        algorithm = choose_algorithm(inst, concept, guards)
    pi = run_algorithm(inst, concept, algorithm, guards)
    if pi is not None and not verify.is_stable(inst, pi, concept):
        raise GgaspError(
            f"internal error: {algorithm} returned an assignment that fails the "
            f"{concept.value} verifier"
        )
    return SolveOutcome(concept, algorithm, pi)


def applicable_algorithms(inst: Instance, concept, guards: Guards = Guards()) -> list[str]:
    """Algorithms whose preconditions and guards hold for this instance."""
    concept = Concept.parse(concept)
    cls = classify(inst.graph)
    _, all_copyable = inst.copyable_classes()
    out = []
    for alg in ALGORITHMS:
        try:
            _check_preconditions(inst, concept, alg, guards)
        except DispatchError:
            continue
        if alg.startswith("tree") and inst.p > guards.max_p_tree:
            continue
        if alg == "clique-flow" and (
            inst.p > guards.max_p_clique
            or (inst.n + 1) ** (inst.p + 1) > flow.VECTOR_BUDGET_DEFAULT
        ):
            continue
        if alg == "small-comp" and (
            cls.max_component > guards.max_component or inst.p > guards.max_p_component
        ):
            continue
        if alg == "core-subsets" and not _kappa_within(inst, guards.subset_budget):
            continue
        if alg == "brute" and (inst.p + 1) ** inst.n > guards.brute_budget:
            continue
        out.append(alg)
    return out
