# bc_reference/passes.py
"""
Passes shared by every bounds-consistency route.

A pass works in place on two integer lists ``lbs`` and ``ubs`` and returns
False as soon as it detects failure.
"""
import logging

from core.models import PropagationOutcome, split_bounds

logger = logging.getLogger(__name__)


def precedence_arrays(graph, lbs, ubs):
    """Strict precedences: lb_j >= lb_p + 1 for p in P(j), ub_i <= ub_s - 1 for s in S(i)."""
    order = graph.topological_order
    for j in order:
        for p in graph.pred_closure[j]:
            if lbs[p] + 1 > lbs[j]:
                lbs[j] = lbs[p] + 1
    for i in reversed(order):
        for s in graph.succ_closure[i]:
            if ubs[s] - 1 < ubs[i]:
                ubs[i] = ubs[s] - 1
    return all(lb <= ub for lb, ub in zip(lbs, ubs))


def _hall_intervals(lbs, ubs):
    """
    Tight intervals [l, u] (l in L, u in U) holding exactly u - l + 1 domains.

    Returns None when some interval holds more domains than values.
    """
    by_ub = sorted(range(len(lbs)), key=lambda j: ubs[j])
    halls = []
    for l in sorted(set(lbs)):
        inside = [j for j in by_ub if lbs[j] >= l]
        count = 0
        while count < len(inside):
            u = ubs[inside[count]]
            while count < len(inside) and ubs[inside[count]] == u:
                count += 1
            capacity = u - l + 1
            if count > capacity:
                return None
            if count == capacity:
                halls.append((l, u))
    return halls


def alldifferent_arrays(lbs, ubs):
    """
    Bounds consistency for plain AllDifferent, to fixpoint.

    Every Hall interval [l, u] pushes the bounds of the domains it does not
    contain out of [l, u]; a violated Hall interval is a failure.
    """
    n = len(lbs)
    while True:
        if any(lb > ub for lb, ub in zip(lbs, ubs)):
            return False
        halls = _hall_intervals(lbs, ubs)
        if halls is None:
            return False
        snapshot = list(zip(lbs, ubs))
        changed = False
        for l, u in halls:
            for j in range(n):
                lb0, ub0 = snapshot[j]
                if l <= lb0 and ub0 <= u:
                    continue
                if l <= lbs[j] <= u:
                    lbs[j] = u + 1
                    changed = True
                if l <= ubs[j] <= u:
                    ubs[j] = l - 1
                    changed = True
        if not changed:
            return True


def run_to_fixpoint(passes, lbs, ubs):
    """Round-robin over ``passes`` until a full round changes nothing."""
    rounds = 0
    while True:
        rounds += 1
        before = (list(lbs), list(ubs))
        for apply_pass in passes:
            if not apply_pass(lbs, ubs):
                logger.debug(f"❌ {getattr(apply_pass, '__name__', apply_pass)} failed in round {rounds}")
                return False
        if (lbs, ubs) == before:
            logger.debug(f"✅ Fixpoint after {rounds} rounds")
            return True


def alldifferent_pass(instance, bounds):
    lbs, ubs = split_bounds(bounds)
    if not alldifferent_arrays(lbs, ubs):
        return PropagationOutcome.failure("violated Hall interval")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)


def precedence_pass(instance, bounds):
    lbs, ubs = split_bounds(bounds)
    if not precedence_arrays(instance.graph, lbs, ubs):
        return PropagationOutcome.failure("precedence wiped out a domain")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)


def decomposed_passes(graph):
    def precedence(lbs, ubs):
        return precedence_arrays(graph, lbs, ubs)

    return [precedence, alldifferent_arrays]


def propagate_decomposed_alldifferent(instance, bounds):
    """
    Fixpoint of AllDifferent BC plus the binary orders alone.

    Weaker than AllDiffPrec bounds consistency; also establishes the
    precondition of the per-bound tests.
    """
    lbs, ubs = split_bounds(bounds)
    if not run_to_fixpoint(decomposed_passes(instance.graph), lbs, ubs):
        return PropagationOutcome.failure("AllDifferent or precedence failure")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)
