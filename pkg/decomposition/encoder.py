# decomposition/encoder.py
"""
Encoding of AllDiffPrec into Booleans and linear inequalities.

For every X_i and value l there is a Boolean B_il (X_i <= l). For every
interval [l, u] with u - l < n there is a Boolean A_ilu (X_i in [l, u]) and:

* Hall sum:        sum_i A_ilu <= u - l + 1
* successor sum:   A_ilu -> sum_{j in S(i)} B_ju + sum_{j not in S(i), j != i} A_jlu <= u - l
* predecessor sum: A_ilu -> sum_{j in P(i)} (X_j >= l) + sum_{j not in P(i), j != i} A_jlu <= u - l

"X_j >= l" is the literal not B_j(l-1), constant true when l = 1. Every
closure edge (i, j) gives X_i < X_j.
"""
import logging

from .models import (
    CHANNEL_A,
    CHANNEL_B,
    INTERVAL_SUM,
    PREDECESSOR_SUM,
    STRICT_LESS,
    SUCCESSOR_SUM,
    BoolVar,
    DecompConstraint,
    Encoding,
)

logger = logging.getLogger(__name__)


def _intervals(n, d):
    return [(l, u) for l in range(1, d + 1) for u in range(l, min(d, l + n - 1) + 1)]


def encode(instance):
    """Booleans and constraints of the decomposition of ``instance``."""
    n, d = instance.n, instance.d
    graph = instance.graph
    ids = {("X", i): i for i in range(n)}
    booleans = []

    def new_bool(key):
        var = BoolVar(id=n + len(booleans), key=key)
        booleans.append(var)
        ids[key] = var.id
        return var.id

    constraints = []
    for i in range(n):
        for l in range(1, d + 1):
            b = new_bool(("B", i, l))
            constraints.append(DecompConstraint(CHANNEL_B, (i, b), constant=l))

    intervals = _intervals(n, d)
    for i in range(n):
        for l, u in intervals:
            a = new_bool(("A", i, l, u))
            b_u = ids[("B", i, u)]
            if l == 1:
                constraints.append(DecompConstraint(CHANNEL_A, (a, b_u), constant=l))
            else:
                b_below = ids[("B", i, l - 1)]
                constraints.append(
                    DecompConstraint(CHANNEL_A, (a, b_below, b_u), constant=l, negated=frozenset({b_below}))
                )

    for l, u in intervals:
        members = tuple(ids[("A", i, l, u)] for i in range(n))
        if len(members) > u - l + 1:
            constraints.append(DecompConstraint(INTERVAL_SUM, members, constant=u - l + 1))

    for i in range(n):
        succ, pred = graph.succ_closure[i], graph.pred_closure[i]
        for l, u in intervals:
            guard = ids[("A", i, l, u)]
            others_succ = tuple(ids[("A", j, l, u)] for j in range(n) if j != i and j not in succ)
            succ_lits = tuple(ids[("B", j, u)] for j in sorted(succ))
            _add_guarded(constraints, SUCCESSOR_SUM, succ_lits + others_succ, u - l, frozenset(), 0, guard)

            others_pred = tuple(ids[("A", j, l, u)] for j in range(n) if j != i and j not in pred)
            if l == 1:
                pred_lits, negated, fixed = (), frozenset(), len(pred)
            else:
                pred_lits = tuple(ids[("B", j, l - 1)] for j in sorted(pred))
                negated, fixed = frozenset(pred_lits), 0
            _add_guarded(constraints, PREDECESSOR_SUM, pred_lits + others_pred, u - l, negated, fixed, guard)

    for i, j in sorted(graph.closure_edges):
        constraints.append(DecompConstraint(STRICT_LESS, (i, j)))

    logger.debug(f"🔍 Encoded n={n}, d={d}: {len(booleans)} Booleans, {len(constraints)} constraints")
    return Encoding(instance=instance, booleans=tuple(booleans), constraints=tuple(constraints), ids=ids)


def _add_guarded(constraints, kind, literals, bound, negated, fixed, guard):
    # trivially satisfied sums are not emitted
    if len(literals) + fixed <= bound:
        return
    constraints.append(
        DecompConstraint(kind, literals, constant=bound, negated=negated, fixed_terms=fixed, guard=guard)
    )


def _literal_text(encoding, var_id, negated):
    key = encoding.booleans[var_id - encoding.n].key
    name = encoding.instance.name(key[1])
    text = f"B({name},{key[2]})" if key[0] == "B" else f"A({name},{key[2]},{key[3]})"
    return f"not {text}" if negated else text


def dump_encoding(encoding):
    """Flat text, one constraint per line."""
    name = encoding.instance.name
    lines = [
        f"# n={encoding.n} d={encoding.instance.d} "
        f"B={encoding.count('B')} A={encoding.count('A')} constraints={len(encoding.constraints)}"
    ]
    for c in encoding.constraints:
        if c.kind == CHANNEL_B:
            x, b = c.variables
            lines.append(f"{c.kind} {_literal_text(encoding, b, False)} <-> {name(x)} <= {c.constant}")
        elif c.kind == CHANNEL_A:
            a, *parts = c.variables
            body = " and ".join(_literal_text(encoding, v, v in c.negated) for v in parts)
            lines.append(f"{c.kind} {_literal_text(encoding, a, False)} <-> {body}")
        elif c.kind == STRICT_LESS:
            lines.append(f"{c.kind} {name(c.variables[0])} < {name(c.variables[1])}")
        else:
            terms = [_literal_text(encoding, v, v in c.negated) for v in c.variables]
            terms += ["1"] * c.fixed_terms
            head = "" if c.guard is None else f"{_literal_text(encoding, c.guard, False)} -> "
            lines.append(f"{c.kind} {head}{' + '.join(terms)} <= {c.constant}")
    return "\n".join(lines) + "\n"
