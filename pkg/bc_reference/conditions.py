# bc_reference/conditions.py
"""
Interval conditions on a single bound.

For X_i and an interval [l, u] with endpoints in L ∪ U:

* upper side: B counts successors of X_i with ub <= u, D counts the other
  variables (X_i excluded) whose domain lies inside [l, u];
* lower side: B counts predecessors with lb >= l, D the other variables
  inside [l, u].

The interval is violated when B + D > u - l, with cost c = B + D - (u - l).
A violated upper interval removes [l - c + 1, u] from X_i, a violated lower
interval removes [l, u + c - 1].
"""
import logging
from dataclasses import dataclass

from core.models import BoundsIndex, PropagationOutcome, split_bounds

from .passes import alldifferent_arrays, precedence_arrays, run_to_fixpoint

logger = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class ConditionCounters:
    B: int
    D: int
    c: int


@dataclass(frozen=True)
class ViolatedInterval:
    side: str
    l: int
    u: int
    counters: ConditionCounters

    @property
    def removed(self):
        """Value range this violation removes from the tested variable."""
        c = self.counters.c
        if self.side == UPPER:
            return self.l - c + 1, self.u
        return self.l, self.u + c - 1

    def covers(self, value):
        low, high = self.removed
        return low <= value <= high


def _count(graph, lbs, ubs, i, l, u):
    succ = graph.succ_closure[i]
    pred = graph.pred_closure[i]
    b_up = d_up = b_low = d_low = 0
    for j in range(len(lbs)):
        if j == i:
            continue
        inside = l <= lbs[j] and ubs[j] <= u
        if j in succ:
            b_up += ubs[j] <= u
        elif inside:
            d_up += 1
        if j in pred:
            b_low += lbs[j] >= l
        elif inside:
            d_low += 1
    return (
        ConditionCounters(b_up, d_up, b_up + d_up - (u - l)),
        ConditionCounters(b_low, d_low, b_low + d_low - (u - l)),
    )


def _violations(graph, lbs, ubs, i, endpoints):
    n = len(lbs)
    found = []
    for l in endpoints:
        for u in endpoints:
            if u < l:
                continue
            if u - l + 1 > n:
                break
            upper, lower = _count(graph, lbs, ubs, i, l, u)
            if upper.c >= 1:
                found.append(ViolatedInterval(UPPER, l, u, upper))
            if lower.c >= 1:
                found.append(ViolatedInterval(LOWER, l, u, lower))
    return found


def interval_counters(instance, bounds, i, l, u):
    """(upper, lower) counters of X_i on any interval [l, u]; c <= 0 means not violated."""
    lbs, ubs = split_bounds(bounds)
    return _count(instance.graph, lbs, ubs, i, l, u)


def violated_intervals(instance, bounds, i):
    """Every violated interval for X_i with endpoints in L ∪ U, both sides."""
    lbs, ubs = split_bounds(bounds)
    endpoints = BoundsIndex.from_bounds(bounds).endpoints
    return _violations(instance.graph, lbs, ubs, i, endpoints)


def conditions_check(instance, bounds, i, v):
    """
    Violated intervals whose pruning range covers X_i = v.

    Assumes AllDifferent and the precedences are already bounds consistent
    on ``bounds``; then the list is empty iff X_i = v has a bound support
    (for v a bound of X_i).
    """
    return [
        violation for violation in violated_intervals(instance, bounds, i)
        if violation.covers(v)
    ]


def conditions_arrays(graph, lbs, ubs):
    """One pass of the interval conditions, computed on a snapshot then applied."""
    endpoints = sorted(set(lbs) | set(ubs))
    new_lbs, new_ubs = list(lbs), list(ubs)
    for i in range(len(lbs)):
        for violation in _violations(graph, lbs, ubs, i, endpoints):
            c = violation.counters.c
            if violation.side == UPPER:
                if violation.l - c + 1 <= ubs[i] <= violation.u:
                    new_ubs[i] = min(new_ubs[i], violation.l - c)
            elif violation.l <= lbs[i] <= violation.u + c - 1:
                new_lbs[i] = max(new_lbs[i], violation.u + c)
    lbs[:] = new_lbs
    ubs[:] = new_ubs
    return all(lb <= ub for lb, ub in zip(lbs, ubs))


def conditions_prune(instance, bounds):
    """
    Bounds consistency from the interval conditions.

    Round-robin of the precedence pass, the AllDifferent pass and the
    conditions pass until a full round changes nothing.
    """
    graph = instance.graph
    lbs, ubs = split_bounds(bounds)
    if any(lb > ub for lb, ub in zip(lbs, ubs)):
        return PropagationOutcome.failure("empty input domain")

    passes = [
        lambda lo, hi: precedence_arrays(graph, lo, hi),
        alldifferent_arrays,
        lambda lo, hi: conditions_arrays(graph, lo, hi),
    ]
    if not run_to_fixpoint(passes, lbs, ubs):
        return PropagationOutcome.failure("interval conditions wiped out a domain")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)
