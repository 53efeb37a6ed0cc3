"""Algorithm selection and the top-level solve entry point."""

from __future__ import annotations

from .errors import GuardError
from .exact import (
    DEFAULT_BUDGET,
    brute_force,
    sgef_fpt_search_size,
    solve_identical_enum,
    solve_ilp,
    solve_sgef_fpt_resources,
)
from .graphs import GraphKind, classify_graph
from .model import (
    Allocation,
    EfficiencyGoal,
    FairnessNotion,
    Instance,
    SolveResult,
    classify_preferences,
    strip_zero_resources,
)
from .poly import (
    solve_efficient_dag,
    solve_gef_dag,
    solve_gef_id01_scc,
    solve_sgef_id01,
    solve_sgef_identical_manyvalues,
)
from .structures import solve_gef_identical_structures

ALGORITHMS = (
    "auto",
    "brute",
    "ilp",
    "dag",
    "scc-id01",
    "alg1",
    "ident-enum",
    "sgef-fpt",
    "struct-fpt",
    "alg2",
)

# beyond this many enumeration nodes the strict case split defers to the ILP
SGEF_FPT_LIMIT = 10**6


def select_algorithm(
    inst: Instance, notion: FairnessNotion, goal: EfficiencyGoal
) -> str:
    """Name of the solver the auto route would use (an internal id; it may
    be finer-grained than the requestable --algo values)."""
    stripped, _ = strip_zero_resources(inst)
    prefs = classify_preferences(stripped)
    graph = classify_graph(stripped)
    scc_like = graph.kind is GraphKind.STRONGLY_CONNECTED or stripped.n <= 1

    if goal is not EfficiencyGoal.COMPLETE:
        if inst.n == 0 or inst.m == 0:
            return "brute"
        if prefs.identical:
            return select_algorithm(inst, notion, EfficiencyGoal.COMPLETE)
        if prefs.zero_one:
            return "ilp"
        if (
            notion is FairnessNotion.WEAK
            and goal is EfficiencyGoal.PARETO
            and graph.kind is GraphKind.ACYCLIC
        ):
            return "alg2"
        return "brute"

    if notion is FairnessNotion.STRICT:
        if prefs.identical and graph.kind is not GraphKind.ACYCLIC and stripped.n > 1:
            return "immediate-infeasible"
        if prefs.identical and prefs.zero_one:
            return "alg1"
        if (
            prefs.identical
            and graph.kind is GraphKind.ACYCLIC
            and prefs.u_diff > stripped.n
            and (not stripped.m or int(stripped.utilities.min()) > 0)
        ):
            return "manyvalues"
        if sgef_fpt_search_size(stripped) <= SGEF_FPT_LIMIT:
            return "sgef-fpt"
        return "ilp"

    # weak notion, complete goal
    if graph.kind is GraphKind.ACYCLIC:
        return "dag"
    if prefs.identical and prefs.zero_one and scc_like:
        return "scc-id01"
    if prefs.identical and scc_like:
        return "ident-enum"
    if prefs.identical:
        return "struct-fpt"
    return "ilp"


def _reexpand(inst: Instance, keep: list[int], res: SolveResult) -> SolveResult:
    """Lift a stripped-instance result; worthless resources go to agent 0."""
    if res.allocation is None or len(keep) == inst.m:
        return res
    assignment = {keep[r]: a for r, a in res.allocation.assignment.items()}
    if inst.n:
        for r in range(inst.m):
            if r not in assignment:
                assignment[r] = 0
    return SolveResult(res.status, Allocation(assignment), res.welfare, res.nodes)


def solve(
    inst: Instance,
    notion: FairnessNotion,
    goal: EfficiencyGoal,
    algorithm: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> SolveResult:
    if algorithm not in ALGORITHMS and algorithm not in ("manyvalues",):
        raise GuardError(f"unknown algorithm: {algorithm}")

    if algorithm == "auto":
        if goal is not EfficiencyGoal.COMPLETE:
            from .efficiency import solve_efficient

            return solve_efficient(inst, notion, goal, budget)
        algorithm = select_algorithm(inst, notion, goal)
        if algorithm == "immediate-infeasible":
            return SolveResult.infeasible()
        return _run(inst, notion, goal, algorithm, budget)

    return _run(inst, notion, goal, algorithm, budget)


def _run(
    inst: Instance,
    notion: FairnessNotion,
    goal: EfficiencyGoal,
    algorithm: str,
    budget: int,
) -> SolveResult:
    if algorithm == "brute":
        return brute_force(inst, notion, goal, budget)
    if algorithm == "alg2":
        if notion is not FairnessNotion.WEAK:
            raise GuardError("alg2 serves the weak notion")
        if goal is EfficiencyGoal.COMPLETE:
            raise GuardError("alg2 serves Pareto and MaxWelfare goals")
        return solve_efficient_dag(inst)
    if goal is not EfficiencyGoal.COMPLETE:
        raise GuardError(f"algorithm {algorithm} serves goal=Complete")

    stripped, keep = strip_zero_resources(inst)
    if algorithm == "ilp":
        return _reexpand(inst, keep, solve_ilp(stripped, notion))
    if algorithm == "dag":
        if notion is not FairnessNotion.WEAK:
            raise GuardError("dag serves the weak notion")
        return solve_gef_dag(inst)
    if algorithm == "scc-id01":
        if notion is not FairnessNotion.WEAK:
            raise GuardError("scc-id01 serves the weak notion")
        return _reexpand(inst, keep, solve_gef_id01_scc(stripped))
    if algorithm == "alg1":
        if notion is not FairnessNotion.STRICT:
            raise GuardError("alg1 serves the strict notion")
        return _reexpand(inst, keep, solve_sgef_id01(stripped))
    if algorithm == "ident-enum":
        return _reexpand(inst, keep, solve_identical_enum(stripped, notion))
    if algorithm == "sgef-fpt":
        if notion is not FairnessNotion.STRICT:
            raise GuardError("sgef-fpt serves the strict notion")
        return _reexpand(inst, keep, solve_sgef_fpt_resources(stripped, budget))
    if algorithm == "struct-fpt":
        if notion is not FairnessNotion.WEAK:
            raise GuardError("struct-fpt serves the weak notion")
        return solve_gef_identical_structures(inst)
    if algorithm == "manyvalues":
        return _reexpand(inst, keep, solve_sgef_identical_manyvalues(stripped))
    raise GuardError(f"unknown algorithm: {algorithm}")
