# bc_fast/propagator.py
import logging

from core.models import PropagationOutcome, split_bounds
from bc_reference.passes import alldifferent_arrays, precedence_arrays, run_to_fixpoint

from .sweep import FULL, check_invariants_default, sweep_lower_arrays, sweep_upper_arrays

logger = logging.getLogger(__name__)


def propagate_bc(instance, bounds, mode=FULL, debug=None, stats=None, trace=None):
    """
    Bounds consistency on AllDiffPrec.

    Round-robin of the precedence pass, the AllDifferent pass, the upper
    sweep and the lower sweep until a full round changes nothing. ``mode``
    picks the value line (``full_universe`` or ``compressed``); both reach
    the same outcome. ``trace`` (a list) collects the sweep trace of every
    round; lower sweeps are traced in mirrored values.
    """
    graph = instance.graph
    if debug is None:
        debug = check_invariants_default()
    lbs, ubs = split_bounds(bounds)
    if any(lb > ub for lb, ub in zip(lbs, ubs)):
        return PropagationOutcome.failure("empty input domain")

    def upper(lo, hi):
        if trace is not None:
            trace.append("-- upper sweep")
        new_ubs = sweep_upper_arrays(graph.succ_closure, lo, hi, mode, trace, debug, stats, instance.name)
        if new_ubs is None:
            return False
        hi[:] = new_ubs
        return all(a <= b for a, b in zip(lo, hi))

    def lower(lo, hi):
        if trace is not None:
            trace.append("-- lower sweep (mirrored)")
        new_lbs = sweep_lower_arrays(graph.pred_closure, lo, hi, mode, trace, debug, stats, instance.name)
        if new_lbs is None:
            return False
        lo[:] = new_lbs
        return all(a <= b for a, b in zip(lo, hi))

    def precedence(lo, hi):
        return precedence_arrays(graph, lo, hi)

    if not run_to_fixpoint([precedence, alldifferent_arrays, upper, lower], lbs, ubs):
        logger.debug(f"❌ propagate_bc ({mode}) failed")
        return PropagationOutcome.failure("bounds consistency failure")
    return PropagationOutcome.from_arrays(bounds, lbs, ubs)
