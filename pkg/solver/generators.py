# solver/generators.py
"""Instance builders for the applications, plus random instances for fuzzing."""
import logging

from core.models import FiniteDomain, build_instance

logger = logging.getLogger(__name__)


# ===============================================================
# 🧮 INSTRUCTION SCHEDULING
# ===============================================================
def gen_instruction_schedule(n_instructions, dependencies, windows=None):
    """
    One variable per instruction, one issue slot each.

    ``dependencies`` are 0-based (before, after) pairs. ``windows`` maps an
    instruction to its (release, due) slots; the rest get [1, n_instructions].
    Raises CycleError for cyclic dependencies.
    """
    windows = windows or {}
    domains = [
        FiniteDomain.from_range(*windows.get(k, (1, n_instructions)))
        for k in range(n_instructions)
    ]
    names = [f"I{k + 1}" for k in range(n_instructions)]
    return build_instance(domains, dependencies, names=names)


# ===============================================================
# 🎓 EXAM TIMETABLING
# ===============================================================
def gen_exam_timetable(exam_slots, ordered_pairs, names=None):
    """
    Exams in distinct time slots; (a, b) in ``ordered_pairs`` puts exam a
    strictly before exam b.
    """
    return build_instance([FiniteDomain(tuple(slots)) for slots in exam_slots], ordered_pairs, names=names)


# ===============================================================
# ✨ GRACEFUL LABELLING
# ===============================================================
K3_X_P2_EDGES = (
    (0, 1), (1, 2), (0, 2),
    (3, 4), (4, 5), (3, 5),
    (0, 3), (1, 4), (2, 5),
)
# symmetry breaking orderings on the vertex labels
K3_X_P2_ORDERINGS = ((0, 1), (0, 3), (0, 4), (0, 5), (1, 2))


def is_graceful(labels, edges):
    """Distinct vertex labels in [0, e] whose edge differences are exactly 1..e."""
    e = len(edges)
    if len(set(labels)) != len(labels) or any(not 0 <= z <= e for z in labels):
        return False
    return sorted(abs(labels[a] - labels[b]) for a, b in edges) == list(range(1, e + 1))


def edge_differences_distinct(edges):
    """Side constraint: edges whose ends are both fixed have distinct label differences."""

    def check(bounds):
        seen = set()
        for a, b in edges:
            if bounds[a].is_fixed and bounds[b].is_fixed:
                diff = abs(bounds[a].lb - bounds[b].lb)
                if diff in seen:
                    return False
                seen.add(diff)
        return True

    return check


def gen_graceful_labelling(vertex_count, edges, orderings=()):
    """
    Vertex labels Z_v in [0, e] under AllDiffPrec with ``orderings`` as
    precedences, and the edge-difference side constraint for the search.

    The orderings sit directly on the vertex labels. There are no edge
    variables and no channeling between edge and vertex variables; the
    distinct differences are checked by the side constraint at every node.
    """
    e = len(edges)
    instance = build_instance(
        [FiniteDomain.from_range(0, e)] * vertex_count,
        orderings,
        names=[f"Z{v}" for v in range(vertex_count)],
    )
    return instance, edge_differences_distinct(edges)


# ===============================================================
# 🎲 RANDOM INSTANCES
# ===============================================================
def random_dag(rng, n, edge_probability=0.3):
    """Edges (order[a], order[b]), a < b, each with ``edge_probability``, over a random permutation."""
    order = list(range(n))
    rng.shuffle(order)
    return [
        (order[a], order[b])
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < edge_probability
    ]


def random_instance(rng, max_n, max_d, edge_probability=0.3, holes=False):
    n = rng.randint(1, max_n)
    d = rng.randint(1, max_d)
    domains = []
    for _ in range(n):
        if holes:
            values = {v for v in range(1, d + 1) if rng.random() < 0.6} or {rng.randint(1, d)}
            domains.append(FiniteDomain(tuple(values)))
        else:
            lb = rng.randint(1, d)
            domains.append(FiniteDomain.from_range(lb, rng.randint(lb, d)))
    return build_instance(domains, random_dag(rng, n, edge_probability))
