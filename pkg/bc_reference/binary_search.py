# bc_reference/binary_search.py
import logging

from core.models import PropagationOutcome, split_bounds
from feasibility.services import has_bound_support

logger = logging.getLogger(__name__)


def _feasible_with(graph, lbs, ubs, i, lb, ub):
    trial_lbs, trial_ubs = list(lbs), list(ubs)
    trial_lbs[i], trial_ubs[i] = lb, ub
    return has_bound_support(graph, trial_lbs, trial_ubs)


def _smallest_supported(graph, lbs, ubs, i):
    # Restrict X_i to the lower half; keep the half that stays feasible.
    lo, hi = lbs[i], ubs[i]
    low, high = lo, hi
    while low < high:
        mid = (low + high) // 2
        if _feasible_with(graph, lbs, ubs, i, lo, mid):
            high = mid
        else:
            low = mid + 1
    return low


def _largest_supported(graph, lbs, ubs, i):
    lo, hi = lbs[i], ubs[i]
    low, high = lo, hi
    while low < high:
        mid = (low + high + 1) // 2
        if _feasible_with(graph, lbs, ubs, i, mid, hi):
            low = mid
        else:
            high = mid - 1
    return low


def filter_binary_search(instance, bounds):
    """
    Bounds consistency by halving each domain around the feasibility test.

    The smallest lb' with a bound support in [lb, lb'] is the new lower
    bound, symmetrically for the upper bound; repeated over all variables
    until nothing moves.
    """
    graph = instance.graph
    lbs, ubs = split_bounds(bounds)
    rounds = 0
    while True:
        rounds += 1
        if not has_bound_support(graph, lbs, ubs):
            logger.debug(f"❌ No bound support (round {rounds})")
            return PropagationOutcome.failure("no bound support")
        changed = False
        for i in range(len(lbs)):
            new_lb = _smallest_supported(graph, lbs, ubs, i)
            if new_lb != lbs[i]:
                lbs[i] = new_lb
                changed = True
            new_ub = _largest_supported(graph, lbs, ubs, i)
            if new_ub != ubs[i]:
                ubs[i] = new_ub
                changed = True
        if not changed:
            logger.debug(f"✅ Binary-search filter fixpoint after {rounds} rounds")
            return PropagationOutcome.from_arrays(bounds, lbs, ubs)
