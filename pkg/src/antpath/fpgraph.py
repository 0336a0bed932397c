"""The frequent-pattern term graph.

Every definition transaction contributes one branch anchored at the Root
sentinel: ``Root -> p1 -> ... -> pn -> target``.  Branches merge on exact
term equality, each node keeps a *data list* (the set of targets whose
branches pass through it), and each edge carries a traversal frequency.
Classroom QA transactions never create structure; they only reinforce
frequencies of already-existing edge sequences, falling back to ever
shorter suffixes of the answer when the full sequence is absent.  Once an
edge's frequency reaches the threshold ``sigma`` it is promoted to an
*association*, the strong prerequisite relation the path search maximizes.

Mutating operations (``insert_branch``, ``apply_qa_transaction``,
``promote_associations``) expect a single writer; every read-only
operation is safe under concurrent readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .corpus import Transaction, TransactionKind
from .errors import InvalidParameterError, SnapshotError, UnknownTermError

ROOT = "Root"
# Normalization lowercases every real term, so the capitalized sentinel can
# never collide with corpus vocabulary.


@dataclass
class TermNode:
    term: str
    data_list: set[str] = field(default_factory=set)


@dataclass
class EdgeStats:
    from_term: str
    to_term: str
    frequency: int
    is_association: bool = False

    @property
    def key(self) -> tuple[str, str]:
        return (self.from_term, self.to_term)


@dataclass(frozen=True)
class MatchReport:
    """Outcome of applying one QA transaction."""

    transaction: Transaction
    matched: bool
    credited_edges: tuple[tuple[str, str], ...]
    unknown_target: bool

    @property
    def matched_length(self) -> int:
        return len(self.credited_edges)


def _word_subset(from_term: str, to_term: str) -> bool:
    """True when the source term's words are a strict subset of the target's."""
    return set(from_term.split()) < set(to_term.split())


def suggest_terms(graph: "FPGraph", term: str, limit: int = 5) -> list[str]:
    """Nearest terms by longest shared prefix, for unknown-term errors."""
    terms = [t for t in sorted(graph.nodes) if t != ROOT]
    for cut in range(len(term), 0, -1):
        hits = [t for t in terms if t.startswith(term[:cut])]
        if hits:
            return hits[:limit]
    return terms[:limit]


class FPGraph:
    """Root-anchored directed graph of terms, data lists and edge frequencies."""

    def __init__(self, sigma: int):
        if not isinstance(sigma, int) or sigma < 1:
            raise InvalidParameterError(f"sigma must be a positive integer, got {sigma!r}")
        self.sigma = sigma
        self.nodes: dict[str, TermNode] = {ROOT: TermNode(ROOT)}
        self.edges: dict[tuple[str, str], EdgeStats] = {}
        self.unmatched_log: list[Transaction] = []
        # Derived index: in-neighbors per node, kept in step with `edges`.
        self._in: dict[str, set[str]] = {}

    # -- construction ------------------------------------------------------

    def insert_branch(self, txn: Transaction) -> None:
        """Insert ``Root -> p1 -> ... -> pn -> target`` and update data lists.

        Existing edges are re-incremented; the target is appended to the
        data list of every prerequisite node (not Root, not the target).
        """
        if txn.target == ROOT or ROOT in txn.prerequisites:
            raise InvalidParameterError("the Root sentinel cannot appear in a transaction")
        chain = (ROOT, *txn.prerequisites, txn.target)
        for term in chain[1:]:
            self.nodes.setdefault(term, TermNode(term))
        for a, b in zip(chain, chain[1:]):
            edge = self.edges.get((a, b))
            if edge is None:
                self.edges[(a, b)] = EdgeStats(a, b, 1)
                self._in.setdefault(b, set()).add(a)
            else:
                edge.frequency += 1
        for prereq in txn.prerequisites:
            self.nodes[prereq].data_list.add(txn.target)

    def apply_qa_transaction(self, txn: Transaction) -> MatchReport:
        """Reinforce the longest existing suffix of a QA answer sequence.

        Tries ``p1 -> ... -> pn -> target`` first, then suffixes of
        decreasing length; exactly one suffix is credited.  Never creates
        nodes or edges.  A transaction matching no suffix is appended to
        the unmatched log.
        """
        if txn.kind is not TransactionKind.QA:
            raise InvalidParameterError("apply_qa_transaction requires a QA transaction")
        unknown_target = txn.target not in self.nodes
        seq = (*txn.prerequisites, txn.target)
        for start in range(len(seq) - 1):
            pairs = tuple(zip(seq[start:], seq[start + 1 :]))
            if all(pair in self.edges for pair in pairs):
                for pair in pairs:
                    self.edges[pair].frequency += 1
                return MatchReport(txn, True, pairs, unknown_target)
        self.unmatched_log.append(txn)
        return MatchReport(txn, False, (), unknown_target)

    def promote_associations(self) -> list[tuple[str, str]]:
        """Flag edges whose frequency reached sigma, plus word-subset edges.

        The subset rule covers amalgamated terms ("cell" -> "cell nucleus")
        regardless of frequency.  Idempotent; flags are never cleared.
        Returns the newly promoted edge keys.
        """
        promoted: list[tuple[str, str]] = []
        for key in sorted(self.edges):
            edge = self.edges[key]
            if edge.is_association:
                continue
            if edge.frequency >= self.sigma or _word_subset(edge.from_term, edge.to_term):
                edge.is_association = True
                promoted.append(key)
        return promoted

    # -- queries -----------------------------------------------------------

    def predecessors(self, term: str) -> list[EdgeStats]:
        """All in-edges of ``term``, ordered by source term."""
        if term not in self.nodes:
            raise UnknownTermError(term)
        return [self.edges[(src, term)] for src in sorted(self._in.get(term, ()))]

    def successors(self, term: str) -> list[EdgeStats]:
        if term not in self.nodes:
            raise UnknownTermError(term)
        return [self.edges[key] for key in sorted(self.edges) if key[0] == term]

    def terms(self) -> list[str]:
        return sorted(self.nodes)

    def association_count(self) -> int:
        return sum(1 for e in self.edges.values() if e.is_association)

    def reachable_from_root(self) -> set[str]:
        out_edges: dict[str, list[str]] = {}
        for a, b in self.edges:
            out_edges.setdefault(a, []).append(b)
        seen = {ROOT}
        stack = [ROOT]
        while stack:
            for nxt in out_edges.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    # -- persistence -------------------------------------------------------

    def snapshot(self) -> dict:
        """A plain-JSON document capturing the full graph state."""
        return {
            "sigma": self.sigma,
            "nodes": [
                {"term": term, "data_list": sorted(self.nodes[term].data_list)}
                for term in sorted(self.nodes)
            ],
            "edges": [
                {
                    "from": edge.from_term,
                    "to": edge.to_term,
                    "frequency": edge.frequency,
                    "association": edge.is_association,
                }
                for _, edge in sorted(self.edges.items())
            ],
            "unmatched": [
                {"question": t.target, "answer_keywords": list(t.prerequisites)}
                for t in self.unmatched_log
            ],
        }

    def snapshot_json(self) -> str:
        return json.dumps(self.snapshot(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def restore(cls, doc: dict) -> "FPGraph":
        """Rebuild a graph from a snapshot document, validating as it goes."""
        if not isinstance(doc, dict):
            raise SnapshotError("snapshot must be a JSON object", element="document")
        sigma = doc.get("sigma")
        if not isinstance(sigma, int) or sigma < 1:
            raise SnapshotError("sigma must be a positive integer", element=f"sigma={sigma!r}")
        graph = cls(sigma)

        nodes = doc.get("nodes")
        if not isinstance(nodes, list):
            raise SnapshotError("'nodes' must be a list", element="nodes")
        seen_terms: set[str] = set()
        for entry in nodes:
            if not isinstance(entry, dict) or not isinstance(entry.get("term"), str):
                raise SnapshotError("node entry must have a string 'term'", element=repr(entry))
            term = entry["term"]
            data_list = entry.get("data_list", [])
            if not isinstance(data_list, list) or not all(isinstance(t, str) for t in data_list):
                raise SnapshotError("data_list must be a list of strings", element=term)
            if term in seen_terms:
                raise SnapshotError("duplicate node", element=term)
            if term in data_list:
                raise SnapshotError("node lists itself in its data_list", element=term)
            if term == ROOT and data_list:
                raise SnapshotError("Root must have an empty data_list", element=term)
            seen_terms.add(term)
            graph.nodes[term] = TermNode(term, set(data_list))
        if ROOT not in seen_terms:
            raise SnapshotError("missing Root node", element=ROOT)

        for node in graph.nodes.values():
            for member in node.data_list:
                if member not in graph.nodes:
                    raise SnapshotError(
                        "data_list references unknown term",
                        element=f"{node.term} -> {member}",
                    )

        edges = doc.get("edges")
        if not isinstance(edges, list):
            raise SnapshotError("'edges' must be a list", element="edges")
        for entry in edges:
            if not isinstance(entry, dict):
                raise SnapshotError("edge entry must be an object", element=repr(entry))
            src, dst = entry.get("from"), entry.get("to")
            freq = entry.get("frequency")
            assoc = entry.get("association", False)
            label = f"{src!r} -> {dst!r}"
            if not isinstance(src, str) or not isinstance(dst, str):
                raise SnapshotError("edge endpoints must be strings", element=label)
            if src not in graph.nodes or dst not in graph.nodes:
                raise SnapshotError("edge endpoint is not a node", element=label)
            if src == dst:
                raise SnapshotError("self-loop", element=label)
            if not isinstance(freq, int) or freq < 1:
                raise SnapshotError("frequency must be an integer >= 1", element=label)
            if not isinstance(assoc, bool):
                raise SnapshotError("association must be a boolean", element=label)
            if (src, dst) in graph.edges:
                raise SnapshotError("duplicate edge", element=label)
            graph.edges[(src, dst)] = EdgeStats(src, dst, freq, assoc)
            graph._in.setdefault(dst, set()).add(src)

        unmatched = doc.get("unmatched", [])
        if not isinstance(unmatched, list):
            raise SnapshotError("'unmatched' must be a list", element="unmatched")
        for entry in unmatched:
            if (
                not isinstance(entry, dict)
                or not isinstance(entry.get("question"), str)
                or not isinstance(entry.get("answer_keywords"), list)
            ):
                raise SnapshotError("unmatched entry malformed", element=repr(entry))
            graph.unmatched_log.append(
                Transaction(
                    target=entry["question"],
                    prerequisites=tuple(entry["answer_keywords"]),
                    kind=TransactionKind.QA,
                )
            )
        return graph

    def copy(self) -> "FPGraph":
        clone = FPGraph(self.sigma)
        clone.nodes = {t: TermNode(t, set(n.data_list)) for t, n in self.nodes.items()}
        clone.edges = {
            k: EdgeStats(e.from_term, e.to_term, e.frequency, e.is_association)
            for k, e in self.edges.items()
        }
        clone._in = {t: set(srcs) for t, srcs in self._in.items()}
        clone.unmatched_log = list(self.unmatched_log)
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FPGraph):
            return NotImplemented
        return (
            self.sigma == other.sigma
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.unmatched_log == other.unmatched_log
        )

    # -- rendering ---------------------------------------------------------

    def to_dot(self) -> str:
        """Graphviz DOT rendering; associations drawn bold, frequency as label."""

        def quote(name: str) -> str:
            return '"' + name.replace('"', '\\"') + '"'

        lines = ["digraph fpgraph {", "  rankdir=LR;"]
        for term in sorted(self.nodes):
            lines.append(f"  {quote(term)};")
        for key in sorted(self.edges):
            edge = self.edges[key]
            attrs = [f'label="{edge.frequency}"']
            if edge.is_association:
                attrs.append("style=bold")
            lines.append(f"  {quote(edge.from_term)} -> {quote(edge.to_term)} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
