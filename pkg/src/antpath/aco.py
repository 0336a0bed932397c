"""Ant-colony search for prerequisite learning paths.

Ants start at the query term and walk *against* edge direction toward the
Root sentinel (or any learner-known term).  A candidate source node ``j`` of
an in-edge ``j -> i`` is feasible only when its data list contains the
query term, i.e. when ``j`` genuinely takes part in explaining the term the
learner asked about; Root is always feasible.  When the feasible
neighborhood contains association edges the ant samples among them with
probability proportional to ``tau^alpha * eta^beta`` (``eta`` being the
edge frequency); when it contains none, the ant deterministically takes the
highest-frequency candidate.  Completed tours deposit ``Q * C`` pheromone
on each of their edges, where ``C`` is the tour's association count, so
association-rich routes are reinforced across iterations.

The best tour is the one with the most associations; ties fall to the
shortest, then lexicographically smallest, tour.  ``brute_force_oracle``
computes the same optimum by exhaustive enumeration of every feasible
simple path and is the reference the stochastic search is verified against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    EmptyNeighborhoodError,
    InvalidParameterError,
    NoPathError,
    OracleTooLargeError,
    UnknownTermError,
)
from .fpgraph import ROOT, EdgeStats, FPGraph


@dataclass(frozen=True)
class ACOParams:
    """Tuning knobs for the search.

    alpha/beta weight pheromone vs. frequency in the transition rule; rho
    is the evaporation factor (1.0 keeps trails forever, matching the
    default mining semantics where reinforcement is never taken back);
    q_factor scales deposits; tau0 is the uniform initial trail value.
    """

    alpha: float = 1.0
    beta: float = 1.0
    rho: float = 1.0
    q_factor: float = 1.0
    tau0: float = 1.0
    n_ants: int = 20
    max_iterations: int = 50
    stagnation_window: int = 10
    seed: int = 0

    def validate(self) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise InvalidParameterError("alpha and beta must be non-negative")
        if not (0 < self.rho <= 1):
            raise InvalidParameterError("rho must be in (0, 1]")
        if self.q_factor <= 0:
            raise InvalidParameterError("q_factor must be positive")
        if self.tau0 <= 0:
            raise InvalidParameterError("tau0 must be positive")
        if self.n_ants < 1 or self.max_iterations < 1 or self.stagnation_window < 1:
            raise InvalidParameterError("n_ants, max_iterations and stagnation_window must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParameterError("seed must fit in 64 unsigned bits")


@dataclass
class PheromoneTable:
    """Per-edge trail values plus the iteration counter."""

    tau: dict[tuple[str, str], float]
    iteration: int = 0


class TourOutcome(str, Enum):
    REACHED_ROOT = "reached_root"
    REACHED_KNOWN = "reached_known"
    DEAD_END = "dead_end"


@dataclass(frozen=True)
class AntTour:
    """One ant's walk: visited terms in order, starting at the query."""

    ant_id: int
    visited: tuple[str, ...]
    association_count: int
    outcome: TourOutcome

    @property
    def terminal(self) -> str:
        return self.visited[-1]

    def edge_keys(self) -> tuple[tuple[str, str], ...]:
        # The tour walks against edge direction, so the graph edge for a
        # step i -> j is (j, i).
        return tuple((b, a) for a, b in zip(self.visited, self.visited[1:]))


@dataclass(frozen=True)
class LearningPath:
    """The recommendation: the best tour reversed into reading order."""

    query: str
    path: tuple[str, ...]
    recommended_terms: frozenset[str]
    association_count: int
    iterations_run: int
    tours_attempted: int

    def to_json_dict(self) -> dict:
        return {
            "query": self.query,
            "path": list(self.path),
            "recommended": sorted(self.recommended_terms),
            "associations": self.association_count,
            "iterations": self.iterations_run,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def initialize_pheromone(graph: FPGraph, tau0: float = 1.0) -> PheromoneTable:
    """One trail entry per graph edge, all starting at ``tau0``."""
    if not tau0 > 0:
        raise InvalidParameterError(f"tau0 must be positive, got {tau0!r}")
    return PheromoneTable(tau={key: float(tau0) for key in sorted(graph.edges)})


def _feasible(graph: FPGraph, visited: Sequence[str], query: str) -> list[EdgeStats]:
    seen = set(visited)
    current = visited[-1]
    candidates = []
    for edge in graph.predecessors(current):
        j = edge.from_term
        if j in seen:
            continue
        if j == ROOT or query in graph.nodes[j].data_list:
            candidates.append(edge)
    return candidates


def feasible_neighborhood(
    graph: FPGraph, tour: AntTour, known: frozenset[str] = frozenset()
) -> list[EdgeStats]:
    """Candidate in-edges at the tour's current node, lexicographic order.

    A source node is feasible when it is unvisited and either is Root or
    carries the tour's query term in its data list.  Known terms do not
    widen or narrow the candidate set; they only terminate the walk once
    stepped onto (see ``construct_tour``).
    """
    del known
    return _feasible(graph, tour.visited, tour.visited[0])


def transition_probabilities(
    graph: FPGraph,
    pheromone: PheromoneTable,
    candidates: Sequence[EdgeStats],
    params: ACOParams,
) -> dict[tuple[str, str], float]:
    """Probability of each candidate edge: tau^alpha * eta^beta, normalized.

    eta is the edge frequency.  Edges outside the candidate list have
    probability exactly zero (they are simply absent from the result).
    """
    del graph
    if not candidates:
        raise EmptyNeighborhoodError("no candidate edges")
    weights = np.array(
        [
            pheromone.tau[e.key] ** params.alpha * float(e.frequency) ** params.beta
            for e in candidates
        ],
        dtype=float,
    )
    total = weights.sum()
    return {e.key: w / total for e, w in zip(candidates, weights)}


def _sample_edge(
    candidates: Sequence[EdgeStats],
    probabilities: dict[tuple[str, str], float],
    rng: np.random.Generator,
) -> EdgeStats:
    u = rng.random()
    acc = 0.0
    for edge in candidates:
        acc += probabilities[edge.key]
        if u < acc:
            return edge
    return candidates[-1]


def construct_tour(
    graph: FPGraph,
    pheromone: PheromoneTable,
    params: ACOParams,
    query: str,
    known: frozenset[str] = frozenset(),
    rng: np.random.Generator | None = None,
    ant_id: int = 0,
) -> AntTour:
    """Walk one ant from the query until Root, a known term, or a dead end.

    Steps with association candidates are sampled among those candidates
    only; steps without any association fall back deterministically to the
    highest-frequency candidate (ties broken by smaller source term).
    """
    if query not in graph.nodes:
        raise UnknownTermError(query)
    if query == ROOT:
        raise InvalidParameterError("the Root sentinel is not a queryable term")
    if query in known:
        raise InvalidParameterError(f"query term {query!r} is already known")
    if rng is None:
        rng = np.random.default_rng(params.seed)

    visited = [query]
    association_count = 0
    while True:
        candidates = _feasible(graph, visited, query)
        if not candidates:
            return AntTour(ant_id, tuple(visited), association_count, TourOutcome.DEAD_END)
        association_candidates = [e for e in candidates if e.is_association]
        if association_candidates:
            probs = transition_probabilities(graph, pheromone, association_candidates, params)
            edge = _sample_edge(association_candidates, probs, rng)
        else:
            edge = min(candidates, key=lambda e: (-e.frequency, e.from_term))
        visited.append(edge.from_term)
        if edge.is_association:
            association_count += 1
        if edge.from_term == ROOT:
            return AntTour(ant_id, tuple(visited), association_count, TourOutcome.REACHED_ROOT)
        if edge.from_term in known:
            return AntTour(ant_id, tuple(visited), association_count, TourOutcome.REACHED_KNOWN)


def count_associations(tour: AntTour, graph: FPGraph) -> int:
    """Number of association edges along the tour (recomputed from the graph)."""
    total = 0
    for key in tour.edge_keys():
        edge = graph.edges.get(key)
        if edge is None:
            raise InvalidParameterError(f"tour uses a nonexistent edge {key!r}")
        if edge.is_association:
            total += 1
    return total


def update_trail(
    pheromone: PheromoneTable, tours: Sequence[AntTour], params: ACOParams
) -> PheromoneTable:
    """Evaporate all trails by rho, then deposit Q*C per tour onto its edges.

    Dead-end tours carry no solution and must be filtered out by the caller.
    """
    for tour in tours:
        if tour.outcome is TourOutcome.DEAD_END:
            raise InvalidParameterError("dead-end tours deposit no pheromone")
    if params.rho != 1.0:
        for key in pheromone.tau:
            pheromone.tau[key] *= params.rho
    for tour in tours:
        deposit = params.q_factor * tour.association_count
        if deposit:
            for key in tour.edge_keys():
                pheromone.tau[key] += deposit
    pheromone.iteration += 1
    return pheromone


def _tour_rank(tour: AntTour) -> tuple[int, int, tuple[str, ...]]:
    return (-tour.association_count, len(tour.visited), tour.visited)


def select_best(tours: Sequence[AntTour]) -> AntTour:
    """Most associations, then shortest, then lexicographically smallest."""
    finished = [t for t in tours if t.outcome is not TourOutcome.DEAD_END]
    if not finished:
        dead_ends = tuple(sorted({t.terminal for t in tours}))
        query = tours[0].visited[0] if tours else "?"
        raise NoPathError(query, dead_ends)
    return min(finished, key=_tour_rank)


def _ant_rng(seed: int, iteration: int, ant: int) -> np.random.Generator:
    # One independent, scheduling-order-free stream per (iteration, ant).
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(iteration, ant)))


def run_search(
    graph: FPGraph,
    query: str,
    known: frozenset[str] = frozenset(),
    params: ACOParams | None = None,
) -> tuple[LearningPath, PheromoneTable]:
    """Full iterated search; returns the path plus the final pheromone state."""
    params = params if params is not None else ACOParams()
    params.validate()
    if query not in graph.nodes:
        raise UnknownTermError(query)
    if query == ROOT:
        raise InvalidParameterError("the Root sentinel is not a queryable term")
    if query in known:
        raise InvalidParameterError(f"query term {query!r} is already known")

    pheromone = initialize_pheromone(graph, params.tau0)
    best: AntTour | None = None
    stagnant = 0
    iterations_run = 0
    tours_attempted = 0
    dead_ends: set[str] = set()

    for iteration in range(params.max_iterations):
        iterations_run += 1
        tours = [
            construct_tour(
                graph,
                pheromone,
                params,
                query,
                known,
                rng=_ant_rng(params.seed, iteration, ant),
                ant_id=ant,
            )
            for ant in range(params.n_ants)
        ]
        tours_attempted += len(tours)
        finished = [t for t in tours if t.outcome is not TourOutcome.DEAD_END]
        for tour in tours:
            if tour.outcome is TourOutcome.DEAD_END:
                dead_ends.add(tour.terminal)

        if finished:
            iteration_best = select_best(finished)
            if best is None or _tour_rank(iteration_best) < _tour_rank(best):
                best = iteration_best
                stagnant = 0
            else:
                stagnant += 1
        else:
            stagnant += 1
            if best is None and all(len(t.visited) == 1 for t in tours):
                break  # the query itself has no feasible neighborhood
        update_trail(pheromone, finished, params)
        if best is not None and stagnant >= params.stagnation_window:
            break

    if best is None:
        raise NoPathError(query, tuple(sorted(dead_ends)))

    path = tuple(reversed(best.visited))
    return (
        LearningPath(
            query=query,
            path=path,
            recommended_terms=frozenset(path[1:-1]),
            association_count=best.association_count,
            iterations_run=iterations_run,
            tours_attempted=tours_attempted,
        ),
        pheromone,
    )


def learning_path(
    graph: FPGraph,
    query: str,
    known: frozenset[str] = frozenset(),
    params: ACOParams | None = None,
) -> LearningPath:
    return run_search(graph, query, known, params)[0]


def enumerate_feasible_paths(
    graph: FPGraph,
    query: str,
    known: frozenset[str] = frozenset(),
    max_partial_paths: int = 1 << 20,
) -> Iterator[tuple[tuple[str, ...], int]]:
    """Yield every feasible simple tour (visited sequence, association count).

    Applies the same feasibility gate as the ants but no association
    preference, so every reachable simple path is produced.  Raises
    OracleTooLargeError once more than ``max_partial_paths`` partial paths
    have been expanded.
    """
    if query not in graph.nodes:
        raise UnknownTermError(query)
    if query == ROOT:
        raise InvalidParameterError("the Root sentinel is not a queryable term")
    if query in known:
        raise InvalidParameterError(f"query term {query!r} is already known")

    expanded = 0
    # Iterative DFS: each frame is (visited list, association count).
    stack: list[tuple[list[str], int]] = [([query], 0)]
    while stack:
        visited, associations = stack.pop()
        expanded += 1
        if expanded > max_partial_paths:
            raise OracleTooLargeError(
                f"enumeration exceeded {max_partial_paths} partial paths"
            )
        for edge in _feasible(graph, visited, query):
            j = edge.from_term
            next_assoc = associations + (1 if edge.is_association else 0)
            next_visited = visited + [j]
            if j == ROOT or j in known:
                yield tuple(next_visited), next_assoc
            else:
                stack.append((next_visited, next_assoc))


def brute_force_oracle(
    graph: FPGraph,
    query: str,
    known: frozenset[str] = frozenset(),
    max_partial_paths: int = 1 << 20,
) -> LearningPath:
    """Exhaustive reference search returning the globally optimal path."""
    best: tuple[int, int, tuple[str, ...]] | None = None
    complete = 0
    for visited, associations in enumerate_feasible_paths(graph, query, known, max_partial_paths):
        complete += 1
        rank = (-associations, len(visited), visited)
        if best is None or rank < best:
            best = rank
    if best is None:
        raise NoPathError(query)
    neg_assoc, _, visited = best
    path = tuple(reversed(visited))
    return LearningPath(
        query=query,
        path=path,
        recommended_terms=frozenset(path[1:-1]),
        association_count=-neg_assoc,
        iterations_run=0,
        tours_attempted=complete,
    )


def merge_params(base: ACOParams, overrides: dict) -> ACOParams:
    """New params with the given fields replaced; unknown fields rejected."""
    valid = set(ACOParams.__dataclass_fields__)
    unknown = set(overrides) - valid
    if unknown:
        raise InvalidParameterError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    merged = replace(base, **overrides)
    merged.validate()
    return merged
