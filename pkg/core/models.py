# core/models.py
"""
Domain types shared by every propagation route.

These are plain immutable value objects, not ORM models. A bound store is a
tuple of ``IntervalDomain``; algorithms that need speed unpack it into two
integer lists with ``split_bounds`` and pack the result with
``PropagationOutcome.from_arrays``.
"""
import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .exceptions import EmptyDomainError, InvalidIndexError
from .graph import PrecedenceGraph

logger = logging.getLogger(__name__)


# ===============================================================
# 📦 DOMAINS
# ===============================================================
@dataclass(frozen=True, order=True)
class IntervalDomain:
    lb: int
    ub: int

    @property
    def is_failed(self):
        return self.lb > self.ub

    @property
    def is_fixed(self):
        return self.lb == self.ub

    @property
    def width(self):
        return max(0, self.ub - self.lb + 1)

    def __contains__(self, value):
        return self.lb <= value <= self.ub

    def values(self):
        return range(self.lb, self.ub + 1)

    def shift(self, offset):
        return IntervalDomain(self.lb + offset, self.ub + offset)

    def __str__(self):
        return f"[{self.lb},{self.ub}]"


@dataclass(frozen=True)
class FiniteDomain:
    """Explicit value set, interior holes included."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(set(int(v) for v in self.values))))

    @classmethod
    def from_range(cls, lb, ub):
        return cls(tuple(range(lb, ub + 1)))

    @property
    def min(self):
        return self.values[0]

    @property
    def max(self):
        return self.values[-1]

    @property
    def is_empty(self):
        return not self.values

    def bounds(self):
        return IntervalDomain(self.min, self.max)

    def is_interval(self):
        return self.max - self.min + 1 == len(self.values)

    def shift(self, offset):
        return FiniteDomain(tuple(v + offset for v in self.values))

    def first_at_least(self, value):
        k = bisect_left(self.values, value)
        return self.values[k] if k < len(self.values) else None

    def last_at_most(self, value):
        k = bisect_right(self.values, value)
        return self.values[k - 1] if k > 0 else None

    def __contains__(self, value):
        k = bisect_left(self.values, value)
        return k < len(self.values) and self.values[k] == value

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __str__(self):
        if self.values and self.is_interval():
            return f"[{self.min},{self.max}]"
        return "{" + ",".join(str(v) for v in self.values) + "}"


@dataclass(frozen=True)
class BoundsIndex:
    """L and U: the sorted distinct minima and maxima of a bound store."""

    L: tuple
    U: tuple

    @classmethod
    def from_bounds(cls, bounds):
        return cls(
            L=tuple(sorted({dom.lb for dom in bounds})),
            U=tuple(sorted({dom.ub for dom in bounds})),
        )

    @property
    def endpoints(self):
        return tuple(sorted(set(self.L) | set(self.U)))


# ===============================================================
# 🧩 INSTANCE
# ===============================================================
@dataclass(frozen=True)
class Instance:
    """
    AllDiffPrec over ``domains`` with precedences ``graph``.

    Domains are normalized so the global minimum value is 1;
    ``value_offset`` maps back: original = normalized + value_offset.
    """

    domains: tuple
    graph: PrecedenceGraph
    value_offset: int = 0
    names: tuple = field(default=())

    @property
    def n(self):
        return len(self.domains)

    @property
    def d(self):
        return max((dom.max for dom in self.domains), default=0)

    def name(self, index):
        return self.names[index] if self.names else f"X{index + 1}"

    def initial_bounds(self):
        return tuple(dom.bounds() for dom in self.domains)

    def normalize(self, value):
        return value - self.value_offset

    def denormalize(self, value):
        return value + self.value_offset

    def denormalize_bounds(self, bounds):
        return tuple(dom.shift(self.value_offset) for dom in bounds)

    def denormalize_assignment(self, assignment):
        return tuple(v + self.value_offset for v in assignment)

    def with_graph(self, graph):
        return Instance(self.domains, graph, self.value_offset, self.names)


def build_instance(raw_domains, raw_edges=(), names=None):
    """
    Normalize raw value sets and precedence pairs into an Instance.

    Indices are 0-based. Raises EmptyDomainError for an empty domain and
    CycleError when the edges contain a directed cycle.
    """
    domains = []
    for index, raw in enumerate(raw_domains):
        dom = raw if isinstance(raw, FiniteDomain) else FiniteDomain(tuple(raw))
        if dom.is_empty:
            raise EmptyDomainError(index)
        domains.append(dom)
    n = len(domains)
    if names is not None and len(names) != n:
        raise InvalidIndexError(f"{len(names)} names given for {n} variables")

    graph = PrecedenceGraph.from_edges(n, raw_edges)
    offset = min((dom.min for dom in domains), default=1) - 1
    normalized = tuple(dom.shift(-offset) for dom in domains)
    logger.debug(f"🧩 Instance built: n={n}, edges={len(graph.edges)}, offset={offset}")
    return Instance(
        domains=normalized,
        graph=graph,
        value_offset=offset,
        names=tuple(names) if names is not None else (),
    )


# ===============================================================
# 📊 PROPAGATION OUTCOME
# ===============================================================
@dataclass(frozen=True)
class BoundChange:
    index: int
    before: IntervalDomain
    after: IntervalDomain


def split_bounds(bounds):
    return [dom.lb for dom in bounds], [dom.ub for dom in bounds]


def join_bounds(lbs, ubs):
    return tuple(IntervalDomain(lb, ub) for lb, ub in zip(lbs, ubs))


@dataclass(frozen=True)
class PropagationOutcome:
    """Failure, or the bounds reached together with the changes made to the input store."""

    bounds: tuple = None
    changes: tuple = ()
    reason: str = ""

    @property
    def failed(self):
        return self.bounds is None

    @classmethod
    def failure(cls, reason=""):
        return cls(bounds=None, reason=reason)

    @classmethod
    def from_bounds(cls, before, after):
        after = tuple(after)
        for index, dom in enumerate(after):
            if dom.is_failed:
                return cls.failure(f"domain of variable {index} wiped out")
        changes = tuple(
            BoundChange(index, old, new)
            for index, (old, new) in enumerate(zip(before, after))
            if old != new
        )
        return cls(bounds=after, changes=changes)

    @classmethod
    def from_arrays(cls, before, lbs, ubs):
        return cls.from_bounds(before, join_bounds(lbs, ubs))


def first_failed(bounds):
    """Index of the first empty interval, or None."""
    for index, dom in enumerate(bounds):
        if dom.is_failed:
            return index
    return None
