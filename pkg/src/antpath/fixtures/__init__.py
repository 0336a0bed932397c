"""Loaders for the corpora and graphs bundled with the package.

``fixtures/README.md`` documents how the case-study corpus was derived and
where it deviates from the reference data-list table it reconstructs.
"""

from __future__ import annotations

from importlib import resources

from ..corpus import TermDefinition, Transaction, parse_definitions, parse_qa_log, to_transaction
from ..fpgraph import FPGraph

CASE_STUDY_SIGMA = 4


def _read(name: str) -> str:
    return resources.files("antpath.fixtures").joinpath(name).read_text(encoding="utf-8")


def biology_definitions() -> list[TermDefinition]:
    """The glossary corpus exactly as listed in the source material."""
    return parse_definitions(_read("biology_definitions.json"))


def walkthrough_definitions() -> list[TermDefinition]:
    """The tiny two-branch walkthrough corpus (a|b,c,d then g|e,f,c)."""
    return parse_definitions(_read("walkthrough_definitions.json"))


def case_study_definitions() -> list[TermDefinition]:
    return parse_definitions(_read("case_study_definitions.json"))


def case_study_qa() -> list[Transaction]:
    return parse_qa_log(_read("case_study_qa.jsonl"))


def build_graph(
    definitions: list[TermDefinition],
    qa: list[Transaction] | None = None,
    sigma: int = 1,
) -> FPGraph:
    """Standard build pipeline: insert branches, replay QA, promote."""
    graph = FPGraph(sigma)
    for defn in definitions:
        graph.insert_branch(to_transaction(defn))
    for txn in qa or []:
        graph.apply_qa_transaction(txn)
    graph.promote_associations()
    return graph


def build_case_study_graph() -> FPGraph:
    """Rebuild the case-study graph from its bundled corpus files."""
    return build_graph(case_study_definitions(), case_study_qa(), CASE_STUDY_SIGMA)


def load_case_study_snapshot() -> FPGraph:
    """Load the pre-built case-study snapshot shipped with the package."""
    import json

    return FPGraph.restore(json.loads(_read("case_study_snapshot.json")))


def case_study_snapshot_path() -> str:
    """Filesystem path of the bundled snapshot (for CLI/server defaults)."""
    return str(resources.files("antpath.fixtures").joinpath("case_study_snapshot.json"))
