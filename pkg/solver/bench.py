# solver/bench.py
import logging
import random
import time
from dataclasses import dataclass

from bc_fast.propagator import propagate_bc
from bc_fast.sweep import COMPRESSED, FULL
from bc_reference.conditions import conditions_prune
from core.models import FiniteDomain, build_instance

from .generators import random_dag

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRow:
    n: int
    d: int
    full_seconds: float
    compressed_seconds: float
    reference_seconds: float
    forward_steps: int
    backward_steps: int


def bench_instance(rng, n, edge_probability=0.3):
    """n variables over d = 2n values, random windows of width at least n/2."""
    d = 2 * n
    domains = []
    for _ in range(n):
        lb = rng.randint(1, d - n // 2)
        domains.append(FiniteDomain.from_range(lb, rng.randint(lb + n // 2, d)))
    return build_instance(domains, random_dag(rng, n, edge_probability))


def _timed(func):
    start = time.perf_counter()
    func()
    return time.perf_counter() - start


def bench(max_n, step=5, seed=0, repeat=3, with_reference=True):
    """Wall time per n of both fast modes and of the reference route (best of ``repeat``)."""
    rows = []
    for n in range(step, max_n + 1, step):
        rng = random.Random(seed * 1000 + n)
        instance = bench_instance(rng, n)
        bounds = instance.initial_bounds()
        stats = []
        propagate_bc(instance, bounds, mode=FULL, stats=stats)
        full = min(_timed(lambda: propagate_bc(instance, bounds, mode=FULL)) for _ in range(repeat))
        compressed = min(_timed(lambda: propagate_bc(instance, bounds, mode=COMPRESSED)) for _ in range(repeat))
        reference = (
            min(_timed(lambda: conditions_prune(instance, bounds)) for _ in range(repeat))
            if with_reference else float("nan")
        )
        rows.append(BenchRow(
            n=n,
            d=instance.d,
            full_seconds=full,
            compressed_seconds=compressed,
            reference_seconds=reference,
            forward_steps=sum(s.forward_steps for s in stats),
            backward_steps=sum(s.backward_steps for s in stats),
        ))
        logger.info(f"🔍 bench n={n}: full={full:.4f}s compressed={compressed:.4f}s")
    return rows
