from __future__ import annotations

import numpy as np
import pytest

from antpath import fixtures
from antpath.corpus import Transaction, TransactionKind
from antpath.fpgraph import FPGraph


def definition(target: str, *prereqs: str) -> Transaction:
    return Transaction(target=target, prerequisites=prereqs, kind=TransactionKind.DEFINITION)


def qa(target: str, *prereqs: str) -> Transaction:
    return Transaction(target=target, prerequisites=prereqs, kind=TransactionKind.QA)


def chain_graph(sigma: int = 3) -> FPGraph:
    """The walkthrough graph: branch b-c-d-a joined with e-f-c-g."""
    graph = FPGraph(sigma)
    graph.insert_branch(definition("a", "b", "c", "d"))
    graph.insert_branch(definition("g", "e", "f", "c"))
    return graph


def random_corpus_graph(rng: np.random.Generator, max_terms: int = 9) -> FPGraph:
    """A small random graph built the same way real corpora are."""
    n_terms = int(rng.integers(4, max_terms))
    terms = [f"t{i:02d}" for i in range(n_terms)]
    graph = FPGraph(int(rng.integers(1, 5)))
    n_txns = int(rng.integers(2, 7))
    for _ in range(n_txns):
        target = terms[int(rng.integers(0, n_terms))]
        others = [t for t in terms if t != target]
        k = int(rng.integers(0, min(4, len(others)) + 1))
        idx = rng.choice(len(others), size=k, replace=False)
        graph.insert_branch(definition(target, *[others[i] for i in sorted(idx)]))
    return graph


@pytest.fixture(scope="session")
def case_study():
    return fixtures.build_case_study_graph()


@pytest.fixture(scope="session")
def chain():
    return chain_graph()
