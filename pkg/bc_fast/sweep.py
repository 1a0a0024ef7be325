# bc_fast/sweep.py
"""
Upper-bound pruning by one sweep per variable over a value line.

For the pruned variable X_i the other variables are visited in
non-decreasing upper bound. Variables that are neither X_i nor its
successors claim the smallest free value at or above their lower bound.
The pointer ``b`` is kept at the smallest value such that [b, ub_j] holds
exactly as many free values as successors of X_i visited so far. Whenever
b <= ub_i <= ub_j, the values [b, ub_i] cannot take X_i and ub_i drops to
b - 1.

Lower bounds are pruned by the same sweep on the mirrored store
(v -> top + 1 - v, edges reversed).
"""
import logging
from dataclasses import dataclass, field

from django.conf import settings

from core.exceptions import InvariantViolation
from core.models import PropagationOutcome, split_bounds

from .union_find import CompressedValueLine, FullValueLine

logger = logging.getLogger(__name__)

FULL = "full_universe"
COMPRESSED = "compressed"
MODES = (FULL, COMPRESSED)


@dataclass
class SweepState:
    b: int
    taken: set = field(default_factory=set)
    successors_seen: int = 0


@dataclass(frozen=True)
class SweepStats:
    index: int
    forward_steps: int
    backward_steps: int
    universe_size: int
    unions: int
    finds: int


def check_invariants_default():
    return bool(getattr(settings, "ALLDIFFPREC", {}).get("CHECK_INVARIANTS", False))


def _value_line(mode, lbs, top):
    if mode == FULL:
        return FullValueLine(top)
    if mode == COMPRESSED:
        return CompressedValueLine(lbs, top)
    raise ValueError(f"unknown sweep mode {mode!r}")


def _audit(state, u, index, j):
    free = sum(1 for x in range(state.b, u + 1) if x not in state.taken)
    if free != state.successors_seen:
        raise InvariantViolation(
            f"X{index + 1} after X{j + 1}: {free} free values in [{state.b},{u}], "
            f"{state.successors_seen} successors seen"
        )
    if state.b > 1 and (state.b - 1) in state.taken:
        raise InvariantViolation(f"X{index + 1} after X{j + 1}: b - 1 = {state.b - 1} is taken")


def _sweep_one(i, succ, lbs, ubs, order, mode, top, trace, debug, stats, label):
    """New upper bound of X_i, or None on failure."""
    line = _value_line(mode, lbs, top)
    state = SweepState(b=ubs[order[0]] + 1)
    new_ub = ubs[i]
    prev_u = ubs[order[0]]
    forward = backward = 0

    for j in order:
        u = ubs[j]
        b_before = state.b
        is_succ = j in succ
        claim = None
        if j != i and not is_succ:
            claim = line.next_free(lbs[j])
            if claim > u:
                logger.debug(f"❌ {label(j)} finds no free value in [{lbs[j]},{u}]")
                return None
            line.take(claim)
            if debug:
                state.taken.add(claim)

        steps = u - prev_u
        prev_u = u
        b = line.advance(b_before, steps) if steps else b_before
        forward += steps

        if is_succ or (claim is not None and claim >= b_before):
            if b - 1 < 1:
                logger.debug(f"❌ {label(i)}: no free values left below {u} for its successors")
                return None
            b = line.run_start(b - 1)
            backward += 1
        else:
            b = line.run_start(b)
        if is_succ:
            state.successors_seen += 1
        state.b = b

        clamp = None
        if b <= new_ub <= u:
            new_ub = clamp = b - 1

        if trace is not None:
            kind = "self" if j == i else "succ" if is_succ else f"claim={claim}"
            line_text = f"{label(i)}: {label(j)} {kind} b={b_before}->{b}"
            trace.append(line_text if clamp is None else f"{line_text} ub={clamp}")
        if debug:
            _audit(state, u, i, j)
        if new_ub < lbs[i]:
            return None

    if debug and (forward > top or backward > len(lbs)):
        raise InvariantViolation(
            f"{label(i)}: {forward} forward / {backward} backward steps exceed {top} / {len(lbs)}"
        )
    if stats is not None:
        stats.append(SweepStats(
            index=i,
            forward_steps=forward,
            backward_steps=backward,
            universe_size=line.universe_size,
            unions=line.sets.unions,
            finds=line.sets.finds,
        ))
    return new_ub


def sweep_upper_arrays(succ_closure, lbs, ubs, mode=FULL, trace=None, debug=False, stats=None, label=None):
    """
    New upper bounds for every variable, computed from one snapshot.

    Returns None when the sweep proves the store infeasible.
    """
    n = len(lbs)
    if n == 0:
        return []
    if any(lb > ub for lb, ub in zip(lbs, ubs)):
        return None
    label = label or (lambda k: f"X{k + 1}")
    top = max(ubs)
    order = tuple(sorted(range(n), key=lambda j: (ubs[j], j)))
    new_ubs = []
    for i in range(n):
        ub = _sweep_one(i, succ_closure[i], lbs, ubs, order, mode, top, trace, debug, stats, label)
        if ub is None:
            return None
        new_ubs.append(ub)
    return new_ubs


def sweep_lower_arrays(pred_closure, lbs, ubs, mode=FULL, trace=None, debug=False, stats=None, label=None):
    """Mirror of ``sweep_upper_arrays``: predecessors play the successors' role."""
    if not lbs:
        return []
    top = max(ubs)
    mirrored_lbs = [top + 1 - ub for ub in ubs]
    mirrored_ubs = [top + 1 - lb for lb in lbs]
    mirrored = sweep_upper_arrays(pred_closure, mirrored_lbs, mirrored_ubs, mode, trace, debug, stats, label)
    if mirrored is None:
        return None
    return [top + 1 - ub for ub in mirrored]


def _run(sweep, closure, instance, bounds, mode, trace, debug, stats):
    if debug is None:
        debug = check_invariants_default()
    lbs, ubs = split_bounds(bounds)
    result = sweep(closure, lbs, ubs, mode, trace, debug, stats, instance.name)
    if result is None:
        return None, lbs, ubs
    return result, lbs, ubs


def prune_upper_bounds(instance, bounds, mode=FULL, trace=None, debug=None, stats=None):
    """
    Enforce the upper-side interval conditions on every variable.

    ``trace`` (a list) receives one line per inner step; ``stats`` (a list)
    receives a ``SweepStats`` per variable; ``debug`` audits the pointer
    invariant after every step (defaults to the CHECK_INVARIANTS setting).
    """
    new_ubs, lbs, _ = _run(sweep_upper_arrays, instance.graph.succ_closure, instance, bounds, mode, trace, debug, stats)
    if new_ubs is None:
        return PropagationOutcome.failure("upper-bound sweep failed")
    return PropagationOutcome.from_arrays(bounds, lbs, new_ubs)


def prune_lower_bounds(instance, bounds, mode=FULL, trace=None, debug=None, stats=None):
    """Enforce the lower-side interval conditions on every variable."""
    new_lbs, _, ubs = _run(sweep_lower_arrays, instance.graph.pred_closure, instance, bounds, mode, trace, debug, stats)
    if new_lbs is None:
        return PropagationOutcome.failure("lower-bound sweep failed")
    return PropagationOutcome.from_arrays(bounds, new_lbs, ubs)
