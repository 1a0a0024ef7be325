# solver/fuzz.py
"""
Differential fuzzing of the propagation routes.

Every generated instance goes through each bounds-consistency route; their
fixpoints must agree. When the instance is small enough, the fast
propagator is also compared with the decomposition and with the exhaustive
bound-support oracle (and, for domains with holes, with domain
consistency); its sweep counters and loop invariant are audited.
"""
import logging
import math
import random
from dataclasses import dataclass, field

from django.conf import settings

from bc_fast.propagator import propagate_bc
from bc_fast.sweep import COMPRESSED, FULL
from core.exceptions import InvariantViolation
from dc_oracle.enumeration import bound_support_hull, enforce_dc

from .formats import InstanceFile, serialize_instance_text
from .generators import random_instance
from .routes import BINARY_SEARCH, DECOMP, FAST, FAST_COMPRESSED, REFERENCE, make_propagator

logger = logging.getLogger(__name__)

COMPARED_ROUTES = (FAST_COMPRESSED, REFERENCE, BINARY_SEARCH)


def _knob(name, default):
    return int(getattr(settings, "ALLDIFFPREC", {}).get(name, default))


@dataclass(frozen=True)
class Discrepancy:
    index: int
    kind: str
    detail: str
    instance_text: str


@dataclass
class FuzzReport:
    seed: int
    count: int
    checked: int = 0
    decomposition_checked: int = 0
    oracle_checked: int = 0
    dc_checked: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.discrepancies

    def summary(self):
        return (
            f"seed={self.seed} instances={self.checked}/{self.count} "
            f"decomposition={self.decomposition_checked} oracle={self.oracle_checked} dc={self.dc_checked} "
            f"discrepancies={len(self.discrepancies)}"
        )


def shard_seeds(seed, count, shards):
    """(shard seed, instance count) per shard; shard k uses seed * 1000 + k."""
    shards = max(1, min(shards, count)) if count else 1
    base, extra = divmod(count, shards)
    return [(seed * 1000 + k, base + (1 if k < extra else 0)) for k in range(shards)]


def generate_instances(seed, count, max_n, max_d, edge_probability=0.3, shards=1, holey_share=0.25):
    """Seeded instances; about ``holey_share`` of them have holes inside their domains."""
    for shard_seed, shard_count in shard_seeds(seed, count, shards):
        rng = random.Random(shard_seed)
        for _ in range(shard_count):
            holes = rng.random() < holey_share
            yield random_instance(rng, max_n, max_d, edge_probability, holes=holes)


def _bounds_text(outcome):
    return "failure" if outcome is None or outcome.failed else " ".join(str(dom) for dom in outcome.bounds)


def _same(a, b):
    if a.failed or b.failed:
        return a.failed and b.failed
    return a.bounds == b.bounds


def _audit_fast(instance, bounds):
    """Counter and invariant problems of the fast sweeps, as strings."""
    problems = []
    for mode in (FULL, COMPRESSED):
        stats = []
        try:
            propagate_bc(instance, bounds, mode=mode, debug=True, stats=stats)
        except InvariantViolation as exc:
            problems.append(f"{mode}: {exc}")
            continue
        for stat in stats:
            if stat.forward_steps > instance.d or stat.backward_steps > instance.n:
                problems.append(f"{mode}: X{stat.index + 1} took {stat.forward_steps}/{stat.backward_steps} steps")
            if mode == COMPRESSED and stat.universe_size > instance.n + 1:
                problems.append(f"{mode}: universe of {stat.universe_size} elements")
    return problems


def check_instance(instance, routes=None, check_decomposition=True, check_oracle=True, audit=True):
    """
    Discrepancies found on one instance, as (kind, detail) pairs, plus
    whether the decomposition, the oracle and domain consistency took part.

    ``routes`` maps extra route names to callables (instance, bounds) ->
    PropagationOutcome that are compared with the fast route.
    """
    bounds = instance.initial_bounds()
    expected = make_propagator(instance, FAST)(bounds)
    found = []

    compared = {name: make_propagator(instance, name) for name in COMPARED_ROUTES}
    for name, route in (routes or {}).items():
        compared[name] = lambda b, route=route: route(instance, b)
    if check_decomposition and instance.n <= _knob("FUZZ_DECOMPOSITION_MAX_N", 6) \
            and instance.d <= _knob("FUZZ_DECOMPOSITION_MAX_D", 7):
        compared[DECOMP] = make_propagator(instance, DECOMP)

    for name, propagate in compared.items():
        outcome = propagate(bounds)
        if not _same(outcome, expected):
            found.append(("fixpoint", f"{name}: {_bounds_text(outcome)} vs {FAST}: {_bounds_text(expected)}"))

    box = math.prod(dom.width for dom in bounds)
    use_oracle = check_oracle and box <= _knob("FUZZ_ORACLE_BOX_CAP", 200_000)
    if use_oracle:
        hull = bound_support_hull(instance, bounds)
        fast_bounds = None if expected.failed else expected.bounds
        if hull != fast_bounds:
            hull_text = "failure" if hull is None else " ".join(str(dom) for dom in hull)
            found.append(("oracle", f"bound-support hull {hull_text} vs {FAST}: {_bounds_text(expected)}"))

    use_dc = use_oracle and not all(dom.is_interval() for dom in instance.domains)
    if use_dc:
        found += [("dc", problem) for problem in _dc_problems(instance, expected)]

    if audit:
        found += [("audit", problem) for problem in _audit_fast(instance, bounds)]
    return found, DECOMP in compared, use_oracle, use_dc


def _dc_problems(instance, expected):
    """Domain consistency must stay inside the bounds-consistency fixpoint."""
    dc = enforce_dc(instance, cap=_knob("FUZZ_ORACLE_BOX_CAP", 200_000))
    if dc.failed:
        return []
    if expected.failed:
        return [f"{FAST} fails but the instance has a support"]
    return [
        f"{instance.name(i)}: DC domain {dom} outside {box}"
        for i, (dom, box) in enumerate(zip(dc.domains, expected.bounds))
        if dom.min < box.lb or dom.max > box.ub
    ]


def fuzz_differential(seed, count, max_n=7, max_d=9, edge_probability=0.3, shards=1,
                      routes=None, check_decomposition=True, check_oracle=True, audit=True,
                      holey_share=0.25):
    """
    Run ``count`` seeded random instances through every route.

    Instances with holes are also checked against domain consistency when
    the oracle runs. The report lists each discrepancy with the instance in
    text form, so it can be replayed with ``manage.py propagate``.
    """
    report = FuzzReport(seed=seed, count=count)
    instances = generate_instances(seed, count, max_n, max_d, edge_probability, shards, holey_share)
    for index, instance in enumerate(instances):
        found, decomposed, oracled, dc_checked = check_instance(
            instance, routes, check_decomposition, check_oracle, audit
        )
        report.checked += 1
        report.decomposition_checked += decomposed
        report.oracle_checked += oracled
        report.dc_checked += dc_checked
        if found:
            text = serialize_instance_text(InstanceFile.from_instance(instance))
            for kind, detail in found:
                logger.warning(f"⚠️ Instance {index}: {kind}: {detail}")
                report.discrepancies.append(Discrepancy(index, kind, detail, text))
    logger.info(f"✅ fuzz {report.summary()}" if report.ok else f"❌ fuzz {report.summary()}")
    return report
