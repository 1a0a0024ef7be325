# solver/search.py
"""
Depth-first search with propagation at every node.

Each node owns a copy of the bound store. After propagation the bounds are
snapped to values present in the finite domains and propagated again,
until both agree. A leaf is accepted only if the independent checker and
the optional side constraint accept it.
"""
import logging
import random
from dataclasses import dataclass

from django.conf import settings

from core.checker import check_assignment
from core.exceptions import NodeLimitReached
from core.models import IntervalDomain

from .routes import FAST, ROUTES, make_propagator

logger = logging.getLogger(__name__)

MIN_DOMAIN = "min-domain"
LEX = "lex"
TOPOLOGICAL = "topological"
VAR_ORDERS = (MIN_DOMAIN, LEX, TOPOLOGICAL)

ASCENDING = "ascending"
DESCENDING = "descending"
VALUE_ORDERS = (ASCENDING, DESCENDING)

ASSIGN = "assign"
SPLIT = "split"
BRANCHINGS = (ASSIGN, SPLIT)

SAT = "sat"
UNSAT = "unsat"


def default_node_limit():
    return int(getattr(settings, "ALLDIFFPREC", {}).get("DEFAULT_NODE_LIMIT", 100_000))


@dataclass(frozen=True)
class SearchConfig:
    var_order: str = MIN_DOMAIN
    value_order: str = ASCENDING
    route: str = FAST
    branching: str = ASSIGN
    node_limit: int = None
    seed: int = 0

    def __post_init__(self):
        for value, allowed in (
            (self.var_order, VAR_ORDERS),
            (self.value_order, VALUE_ORDERS),
            (self.route, ROUTES),
            (self.branching, BRANCHINGS),
        ):
            if value not in allowed:
                raise ValueError(f"{value!r} is not one of {', '.join(allowed)}")
        if self.node_limit is None:
            object.__setattr__(self, "node_limit", default_node_limit())
        if self.node_limit <= 0:
            raise ValueError("node limit must be positive")


@dataclass(frozen=True)
class SearchResult:
    status: str
    assignment: tuple = None
    nodes: int = 0

    @property
    def is_sat(self):
        return self.status == SAT


def snap(instance, bounds):
    """Move each bound inward to the nearest value of its finite domain; None if one empties."""
    snapped = []
    for dom, box in zip(instance.domains, bounds):
        lb = dom.first_at_least(box.lb)
        ub = dom.last_at_most(box.ub)
        if lb is None or ub is None or lb > ub:
            return None
        snapped.append(IntervalDomain(lb, ub))
    return tuple(snapped)


class Search:
    def __init__(self, instance, config, side_constraint=None):
        self.instance = instance
        self.config = config
        self.side_constraint = side_constraint
        self.propagate = make_propagator(instance, config.route)
        rank = list(range(instance.n))
        random.Random(config.seed).shuffle(rank)
        self.rank = rank
        self.topo_position = {v: k for k, v in enumerate(instance.graph.topological_order)}
        self.nodes = 0

    def _settle(self, bounds):
        """Propagate and snap until stable; None on failure."""
        while True:
            outcome = self.propagate(bounds)
            if outcome.failed:
                return None
            snapped = snap(self.instance, outcome.bounds)
            if snapped is None:
                return None
            if snapped == outcome.bounds:
                return snapped
            bounds = snapped

    def _pick(self, bounds):
        free = [i for i, dom in enumerate(bounds) if not dom.is_fixed]
        if self.config.var_order == LEX:
            return min(free)
        if self.config.var_order == TOPOLOGICAL:
            return min(free, key=lambda i: self.topo_position[i])
        # seeded rank breaks ties between equally small domains
        return min(free, key=lambda i: (_count_in(self.instance.domains[i], bounds[i]), self.rank[i]))

    def _children(self, bounds, i):
        """Child stores of ``bounds`` branching on X_i, in exploration order."""
        dom = bounds[i]
        descending = self.config.value_order == DESCENDING
        if self.config.branching == SPLIT:
            mid = (dom.lb + dom.ub) // 2
            halves = [IntervalDomain(dom.lb, mid), IntervalDomain(mid + 1, dom.ub)]
            if descending:
                halves.reverse()
        else:
            v = dom.ub if descending else dom.lb
            rest = IntervalDomain(dom.lb, dom.ub - 1) if descending else IntervalDomain(dom.lb + 1, dom.ub)
            halves = [IntervalDomain(v, v), rest]
        return [bounds[:i] + (half,) + bounds[i + 1:] for half in halves]

    def _accept(self, bounds):
        assignment = tuple(dom.lb for dom in bounds)
        problems = check_assignment(self.instance, assignment)
        if problems:
            logger.warning(f"⚠️ Propagation let an invalid leaf through: {problems}")
            return None
        return assignment

    def run(self):
        stack = [self.instance.initial_bounds()]
        while stack:
            bounds = stack.pop()
            self.nodes += 1
            if self.nodes > self.config.node_limit:
                raise NodeLimitReached(self.nodes - 1)
            bounds = self._settle(bounds)
            if bounds is None:
                continue
            if self.side_constraint is not None and not self.side_constraint(bounds):
                continue
            if all(dom.is_fixed for dom in bounds):
                assignment = self._accept(bounds)
                if assignment is not None:
                    return SearchResult(SAT, assignment, self.nodes)
                continue
            # stack: first child explored first
            stack.extend(reversed(self._children(bounds, self._pick(bounds))))
        return SearchResult(UNSAT, None, self.nodes)


def _count_in(domain, box):
    return sum(1 for v in domain if box.lb <= v <= box.ub)


def solve(instance, config=None, side_constraint=None):
    """
    Search for a support of ``instance``.

    Returns a SearchResult with status ``sat`` (normalized assignment) or
    ``unsat``; raises NodeLimitReached when the node limit runs out first.
    ``side_constraint(bounds) -> bool`` prunes nodes it rejects.
    """
    config = config or SearchConfig()
    search = Search(instance, config, side_constraint)
    result = search.run()
    logger.info(f"✅ solve ({config.route}): {result.status} after {result.nodes} nodes")
    return result
