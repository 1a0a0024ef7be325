# decomposition/engine.py
"""
Queue-based fixpoint over the decomposition.

Every constraint has a local bounds filter. When a variable's bounds change,
the constraints watching it are queued again; propagation stops when the
queue is empty or some domain is wiped out.
"""
import logging
from collections import deque

from core.models import PropagationOutcome, split_bounds

from .models import CHANNEL_A, CHANNEL_B, STRICT_LESS, SUM_KINDS

logger = logging.getLogger(__name__)


class Wipeout(Exception):
    pass


class Store:
    """Bounds of every variable of an encoding, with a propagation queue."""

    def __init__(self, encoding, bounds):
        lbs, ubs = split_bounds(bounds)
        self.lbs = lbs + [var.lb for var in encoding.booleans]
        self.ubs = ubs + [var.ub for var in encoding.booleans]
        self.constraints = encoding.constraints
        self.watchers = [[] for _ in range(encoding.variable_count)]
        for index, constraint in enumerate(self.constraints):
            for var in constraint.watched:
                self.watchers[var].append(index)
        self.queue = deque(range(len(self.constraints)))
        self.queued = [True] * len(self.constraints)
        self.revisions = 0

    def _touch(self, var):
        if self.lbs[var] > self.ubs[var]:
            raise Wipeout(var)
        for index in self.watchers[var]:
            if not self.queued[index]:
                self.queued[index] = True
                self.queue.append(index)

    def set_lb(self, var, value):
        if value > self.lbs[var]:
            self.lbs[var] = value
            self._touch(var)

    def set_ub(self, var, value):
        if value < self.ubs[var]:
            self.ubs[var] = value
            self._touch(var)

    # literals: (var, negated)
    def lit_min(self, var, negated):
        return 1 - self.ubs[var] if negated else self.lbs[var]

    def lit_max(self, var, negated):
        return 1 - self.lbs[var] if negated else self.ubs[var]

    def set_lit(self, var, negated, value):
        if negated:
            value = 1 - value
        self.set_lb(var, value)
        self.set_ub(var, value)

    def run(self):
        while self.queue:
            index = self.queue.popleft()
            self.queued[index] = False
            self.revisions += 1
            FILTERS[self.constraints[index].kind](self, self.constraints[index])


def _channel_b(store, c):
    x, b = c.variables
    l = c.constant
    if store.ubs[x] <= l:
        store.set_lb(b, 1)
    elif store.lbs[x] > l:
        store.set_ub(b, 0)
    if store.lbs[b] == 1:
        store.set_ub(x, l)
    elif store.ubs[b] == 0:
        store.set_lb(x, l + 1)


def _channel_a(store, c):
    # a <-> conjunction of the remaining literals
    a, *parts = c.variables
    lits = [(v, v in c.negated) for v in parts]
    if store.lbs[a] == 1:
        for var, neg in lits:
            store.set_lit(var, neg, 1)
    if any(store.lit_max(var, neg) == 0 for var, neg in lits):
        store.set_ub(a, 0)
    elif all(store.lit_min(var, neg) == 1 for var, neg in lits):
        store.set_lb(a, 1)
    if store.ubs[a] == 0:
        unknown = [(var, neg) for var, neg in lits if store.lit_min(var, neg) == 0]
        if len(unknown) == 1:
            store.set_lit(*unknown[0], 0)


def _linear_sum(store, c):
    lits = [(v, v in c.negated) for v in c.variables]
    rhs = c.constant - c.fixed_terms
    total = sum(store.lit_min(var, neg) for var, neg in lits)
    if c.guard is not None and store.lbs[c.guard] == 0:
        if total > rhs:
            store.set_ub(c.guard, 0)
        return
    if total > rhs:
        raise Wipeout(c.guard)
    if total == rhs:
        for var, neg in lits:
            if store.lit_min(var, neg) == 0:
                store.set_lit(var, neg, 0)


def _strict_less(store, c):
    i, j = c.variables
    store.set_lb(j, store.lbs[i] + 1)
    store.set_ub(i, store.ubs[j] - 1)


FILTERS = {
    CHANNEL_B: _channel_b,
    CHANNEL_A: _channel_a,
    STRICT_LESS: _strict_less,
    **{kind: _linear_sum for kind in SUM_KINDS},
}


def propagate_store(encoding, bounds):
    """Run the encoding to fixpoint; the Store, or None on wipe-out."""
    if any(dom.is_failed for dom in bounds):
        return None
    store = Store(encoding, bounds)
    try:
        store.run()
    except Wipeout:
        return None
    return store


def propagate_decomposition(encoding, bounds):
    """
    Bounds consistency on every constraint of ``encoding``, read back on X.

    ``bounds`` are bounds of the instance the encoding was built from.
    """
    store = propagate_store(encoding, bounds)
    if store is None:
        logger.debug("❌ Decomposition wiped out a domain")
        return PropagationOutcome.failure("decomposition wipe-out")
    n = encoding.n
    logger.debug(f"✅ Decomposition fixpoint after {store.revisions} revisions")
    return PropagationOutcome.from_arrays(bounds, store.lbs[:n], store.ubs[:n])
