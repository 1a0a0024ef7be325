# core/graph.py
import logging
from dataclasses import dataclass

import networkx as nx

from .exceptions import CycleError, InvalidIndexError

logger = logging.getLogger(__name__)


def _as_digraph(edges, n):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidIndexError(f"edge ({i}, {j}) out of range for {n} variables")
        graph.add_edge(i, j)
    return graph


def _check_acyclic(graph):
    # Topological sort attempt before any closure: a cycle would put i in S(i).
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [u for u, _ in nx.find_cycle(graph)]
        logger.warning(f"❌ Cycle in precedence edges: {cycle}")
        raise CycleError(cycle)


def transitive_closure(edges, n):
    """
    (succ_closure, pred_closure) for ``edges`` over variables 0..n-1.

    succ_closure[i] is S(i), every j reachable from i; pred_closure[j] is P(j).
    Raises CycleError on any directed cycle, self-loops included.
    """
    return _closure(_as_digraph(edges, n))


def _closure(graph):
    _check_acyclic(graph)
    nodes = range(graph.number_of_nodes())
    succ = tuple(frozenset(nx.descendants(graph, i)) for i in nodes)
    pred = tuple(frozenset(nx.ancestors(graph, i)) for i in nodes)
    return succ, pred


@dataclass(frozen=True)
class PrecedenceGraph:
    """DAG over variable indices; (i, j) in edges means X_i < X_j."""

    n: int
    edges: frozenset
    succ_closure: tuple
    pred_closure: tuple
    topological_order: tuple

    @classmethod
    def from_edges(cls, n, edges):
        edges = frozenset((int(i), int(j)) for i, j in edges)
        graph = _as_digraph(edges, n)
        succ, pred = _closure(graph)
        order = tuple(nx.lexicographical_topological_sort(graph))
        return cls(n=n, edges=edges, succ_closure=succ, pred_closure=pred, topological_order=order)

    @classmethod
    def empty(cls, n):
        return cls.from_edges(n, ())

    @property
    def closure_edges(self):
        return frozenset((i, j) for i in range(self.n) for j in self.succ_closure[i])

    def is_flat(self):
        """No directed path of length 2 or more."""
        return all(not self.succ_closure[j] for i, j in self.edges)

    def reversed(self):
        """Mirror graph: every edge flipped, S and P swapped."""
        return PrecedenceGraph(
            n=self.n,
            edges=frozenset((j, i) for i, j in self.edges),
            succ_closure=self.pred_closure,
            pred_closure=self.succ_closure,
            topological_order=tuple(reversed(self.topological_order)),
        )
