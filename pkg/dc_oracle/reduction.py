# dc_oracle/reduction.py
"""
Encoding of 3-SAT into AllDiffPrec over a flat DAG.

With N variables and M clauses the instance has 2N + 3M variables:

* two truth variables per x_j, both with domain {j, N+M+j}. The one holding
  the small value j marks the literal that is true: the second (index
  2j - 1, 0-based) for x_j, the first (index 2j - 2) for not x_j;
* three clause variables per clause i, all with domain
  {N+i, 2N+M+2i-1, 2N+M+2i}. Exactly one of them takes N+i, and it must sit
  above the truth variable of its literal, which forces that literal true.
"""
import logging

from core.exceptions import MalformedFormulaError
from core.models import build_instance

logger = logging.getLogger(__name__)


def truth_index(literal):
    """0-based index of the truth variable a literal is linked from."""
    j = abs(literal)
    return 2 * j - 1 if literal > 0 else 2 * j - 2


def clause_index(n_vars, clause, position):
    """0-based index of the clause variable for ``position`` in clause ``clause`` (1-based)."""
    return 2 * n_vars + 3 * (clause - 1) + position


def encode_3sat(formula):
    """
    AllDiffPrec instance with a support iff ``formula`` is satisfiable.

    Every clause must have exactly 3 literals and must not hold a literal
    together with its negation.
    """
    n, m = formula.n_vars, formula.n_clauses
    for number, clause in enumerate(formula.clauses, start=1):
        if len(clause) != 3:
            raise MalformedFormulaError(f"clause {number} has {len(clause)} literals, expected 3")
        if any(-lit in clause for lit in clause):
            raise MalformedFormulaError(f"clause {number} is tautological")

    domains, names = [], []
    for j in range(1, n + 1):
        for label in ("neg", "pos"):
            domains.append({j, n + m + j})
            names.append(f"T{j}{label}")
    edges = []
    for i, clause in enumerate(formula.clauses, start=1):
        for position, literal in enumerate(clause):
            domains.append({n + i, 2 * n + m + 2 * i - 1, 2 * n + m + 2 * i})
            names.append(f"C{i}_{position + 1}")
            edges.append((truth_index(literal), clause_index(n, i, position)))

    logger.info(f"✅ Encoded 3-SAT: N={n}, M={m} -> {len(domains)} variables, {len(edges)} edges")
    return build_instance(domains, edges, names=names)
