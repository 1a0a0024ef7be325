# dc_oracle/enumeration.py
"""
Exhaustive enumeration of supports.

This is the ground truth the propagators are tested against. It is only
usable on small instances: the product of the domain sizes is checked
against ``DC_ENUMERATION_CAP`` before any search starts.
"""
import logging
import math
from dataclasses import dataclass

from django.conf import settings

from core.exceptions import ExplosionError
from core.models import FiniteDomain, IntervalDomain

logger = logging.getLogger(__name__)


def enumeration_cap():
    return int(getattr(settings, "ALLDIFFPREC", {}).get("DC_ENUMERATION_CAP", 10_000_000))


def _check_size(value_lists, cap):
    cap = enumeration_cap() if cap is None else cap
    size = math.prod(len(values) for values in value_lists)
    if size > cap:
        logger.warning(f"⚠️ Enumeration refused: {size} assignments, cap {cap}")
        raise ExplosionError(size, cap)


def _search(graph, value_lists):
    """Depth-first over variables in index order, pruning on distinctness and closure edges."""
    n = len(value_lists)
    assignment = [None] * n
    used = set()

    def consistent(i, v):
        if v in used:
            return False
        for p in graph.pred_closure[i]:
            if p < i and not assignment[p] < v:
                return False
        for s in graph.succ_closure[i]:
            if s < i and not v < assignment[s]:
                return False
        return True

    def extend(i):
        if i == n:
            yield tuple(assignment)
            return
        for v in value_lists[i]:
            if not consistent(i, v):
                continue
            assignment[i] = v
            used.add(v)
            yield from extend(i + 1)
            used.discard(v)
            assignment[i] = None

    yield from extend(0)


def enumerate_supports(instance, cap=None):
    """
    Yield every support of ``instance`` (normalized values, index order).

    Raises ExplosionError when the product of the domain sizes exceeds ``cap``
    (default: the DC_ENUMERATION_CAP setting).
    """
    value_lists = [dom.values for dom in instance.domains]
    _check_size(value_lists, cap)
    yield from _search(instance.graph, value_lists)


def enumerate_bound_supports(instance, bounds, cap=None):
    """Yield every bound support of ``bounds``: interior holes are ignored."""
    if any(dom.is_failed for dom in bounds):
        return
    value_lists = [tuple(dom.values()) for dom in bounds]
    _check_size(value_lists, cap)
    yield from _search(instance.graph, value_lists)


def support_exists(instance, cap=None):
    return next(enumerate_supports(instance, cap), None) is not None


def bound_support_hull(instance, bounds, cap=None):
    """
    Smallest box holding every bound support of ``bounds``.

    This is the bounds consistency fixpoint of ``bounds``; None when no bound
    support exists.
    """
    lows = highs = None
    for support in enumerate_bound_supports(instance, bounds, cap):
        if lows is None:
            lows, highs = list(support), list(support)
            continue
        for i, v in enumerate(support):
            if v < lows[i]:
                lows[i] = v
            elif v > highs[i]:
                highs[i] = v
    if lows is None:
        return None
    return tuple(IntervalDomain(lb, ub) for lb, ub in zip(lows, highs))


@dataclass(frozen=True)
class DCOutcome:
    domains: tuple = None

    @property
    def failed(self):
        return self.domains is None


def enforce_dc(instance, cap=None):
    """
    Domain consistency by enumeration.

    Every domain keeps exactly the values that appear in some support; a
    failed outcome means the instance has no support at all.
    """
    seen = [set() for _ in range(instance.n)]
    found = False
    for support in enumerate_supports(instance, cap):
        found = True
        for i, v in enumerate(support):
            seen[i].add(v)
    if not found:
        logger.info("❌ enforce_dc: no support")
        return DCOutcome()
    logger.info(f"✅ enforce_dc: n={instance.n}")
    return DCOutcome(domains=tuple(FiniteDomain(tuple(values)) for values in seen))
