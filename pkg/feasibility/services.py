# feasibility/services.py
"""
Bound-support existence: precedence-aware preprocessing followed by a
greedy sweep over values.
"""
import heapq
import logging

from core.exceptions import NotPreprocessedError
from core.models import PropagationOutcome, split_bounds

logger = logging.getLogger(__name__)


def preprocess_arrays(graph, lbs, ubs):
    """
    In-place weak edge condition: lb_i <= lb_j and ub_i <= ub_j for i in P(j).

    Returns False when a domain empties.
    """
    order = graph.topological_order
    for j in order:
        for p in graph.pred_closure[j]:
            if lbs[p] > lbs[j]:
                lbs[j] = lbs[p]
    for i in reversed(order):
        for s in graph.succ_closure[i]:
            if ubs[s] < ubs[i]:
                ubs[i] = ubs[s]
    return all(lb <= ub for lb, ub in zip(lbs, ubs))


def preprocess_bounds(instance, bounds):
    lbs, ubs = split_bounds(bounds)
    if not preprocess_arrays(instance.graph, lbs, ubs):
        logger.debug("❌ Preprocessing emptied a domain")
        return PropagationOutcome.failure("preprocessing emptied a domain")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)


def is_preprocessed(graph, lbs, ubs):
    return all(
        lbs[i] <= lbs[j] and ubs[i] <= ubs[j]
        for i in range(graph.n)
        for j in graph.succ_closure[i]
    )


def greedy_arrays(graph, lbs, ubs):
    """
    Greedy value sweep over preprocessed bounds.

    Values are taken in increasing order; value v goes to the unassigned
    variable containing v with the smallest upper bound. Among variables tied
    on that upper bound, a member with no predecessor inside the tied set
    wins, lowest index first. Returns the assignment or None.
    """
    n = len(lbs)
    if n == 0:
        return ()
    by_lb = sorted(range(n), key=lambda j: (lbs[j], j))
    assignment = [None] * n
    heap = []
    k = 0
    v = lbs[by_lb[0]]
    for _ in range(n):
        if not heap:
            v = max(v, lbs[by_lb[k]])
        while k < n and lbs[by_lb[k]] <= v:
            j = by_lb[k]
            heapq.heappush(heap, (ubs[j], j))
            k += 1

        top_ub = heap[0][0]
        if top_ub < v:
            return None
        tied = []
        while heap and heap[0][0] == top_ub:
            tied.append(heapq.heappop(heap)[1])
        tied_set = set(tied)
        chosen = min(j for j in tied if not (graph.pred_closure[j] & tied_set))
        for j in tied:
            if j != chosen:
                heapq.heappush(heap, (top_ub, j))

        assignment[chosen] = v
        v += 1
    return tuple(assignment)


def greedy_bound_support(instance, bounds):
    """
    A bound support of ``bounds``, or None when none exists.

    Raises NotPreprocessedError unless ``bounds`` satisfy the weak edge
    condition (run ``preprocess_bounds`` first).
    """
    lbs, ubs = split_bounds(bounds)
    if any(lb > ub for lb, ub in zip(lbs, ubs)):
        return None
    if not is_preprocessed(instance.graph, lbs, ubs):
        raise NotPreprocessedError("bounds must be preprocessed before the greedy sweep")
    return greedy_arrays(instance.graph, lbs, ubs)


def has_bound_support(graph, lbs, ubs):
    """Preprocess a copy and run the greedy sweep on it."""
    lbs, ubs = list(lbs), list(ubs)
    if not preprocess_arrays(graph, lbs, ubs):
        return False
    return greedy_arrays(graph, lbs, ubs) is not None


def find_bound_support(instance, bounds):
    lbs, ubs = split_bounds(bounds)
    if not preprocess_arrays(instance.graph, lbs, ubs):
        return None
    return greedy_arrays(instance.graph, lbs, ubs)
