# core/samples.py
"""Small worked instances used by tests, docs and ``--sample``."""
from .models import FiniteDomain, build_instance


def decomposition_gap_instance():
    """
    X1, X2 in [1,3], X3 in [2,4], X1 < X3, X2 < X3.

    AllDifferent plus the two binary orders prune nothing here, while X3 = 2
    has no bound support.
    """
    return build_instance(
        [FiniteDomain.from_range(1, 3), FiniteDomain.from_range(1, 3), FiniteDomain.from_range(2, 4)],
        [(0, 2), (1, 2)],
    )


def greedy_tie_instance():
    """X1, X2 in [1,5], X3 in [1,3], X4 in [2,4]; X1, X2 precede X3 and X4."""
    return build_instance(
        [
            FiniteDomain.from_range(1, 5),
            FiniteDomain.from_range(1, 5),
            FiniteDomain.from_range(1, 3),
            FiniteDomain.from_range(2, 4),
        ],
        [(0, 2), (1, 2), (0, 3), (1, 3)],
    )


def direct_pruning_instance():
    """X1 in {1,2}, X2 in {2,3}, X3 in {1,2,3}, X1 < X2."""
    return build_instance([{1, 2}, {2, 3}, {1, 2, 3}], [(0, 1)])


def violated_interval_instance():
    """
    X1 in [1,5], X2, X3 in [2,6], X4, X5 in [3,6]; X1 < X2, X1 < X3.

    Upper bound sweep for X1 prunes [3,5].
    """
    return build_instance(
        [
            FiniteDomain.from_range(1, 5),
            FiniteDomain.from_range(2, 6),
            FiniteDomain.from_range(2, 6),
            FiniteDomain.from_range(3, 6),
            FiniteDomain.from_range(3, 6),
        ],
        [(0, 1), (0, 2)],
    )


def pigeonhole_instance(pigeons=3, holes=2):
    return build_instance([FiniteDomain.from_range(1, holes)] * pigeons)


SAMPLES = {
    "decomposition-gap": decomposition_gap_instance,
    "greedy-tie": greedy_tie_instance,
    "direct-pruning": direct_pruning_instance,
    "violated-interval": violated_interval_instance,
    "pigeonhole": pigeonhole_instance,
}
