# bc_reference/direct_pruning.py
from dataclasses import dataclass

from core.models import IntervalDomain, first_failed
from feasibility.services import find_bound_support


@dataclass(frozen=True)
class DirectPruneStore:
    """Bounds after hypothesizing X_index = value, one pass, no fixpoint."""

    index: int
    value: int
    bounds: tuple

    @property
    def is_failed(self):
        return first_failed(self.bounds) is not None


def direct_prune(instance, bounds, i, v):
    """
    Direct pruning of X_i = v.

    X_i becomes {v}; any other X_j with v as a bound loses v; predecessors of
    X_i drop [v, ub]; successors drop [lb, v]. The result may hold empty
    intervals.
    """
    graph = instance.graph
    pruned = []
    for j, dom in enumerate(bounds):
        if j == i:
            pruned.append(IntervalDomain(v, v))
            continue
        lb, ub = dom.lb, dom.ub
        if lb == v:
            lb += 1
        if ub == v:
            ub -= 1
        if j in graph.pred_closure[i]:
            ub = min(ub, v - 1)
        elif j in graph.succ_closure[i]:
            lb = max(lb, v + 1)
        pruned.append(IntervalDomain(lb, ub))
    return DirectPruneStore(index=i, value=v, bounds=tuple(pruned))


def bound_support_exists(instance, bounds, i, v):
    """True iff X_i = v extends to a bound support of ``bounds``."""
    store = direct_prune(instance, bounds, i, v)
    if store.is_failed:
        return False
    return find_bound_support(instance, store.bounds) is not None
