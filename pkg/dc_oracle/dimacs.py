# dc_oracle/dimacs.py
"""DIMACS CNF reading and a truth-table satisfiability check."""
import itertools
import logging
from dataclasses import dataclass

from core.exceptions import MalformedFormulaError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables 1..n_vars; literal k is x_k, -k is its negation."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(lit) for lit in clause) for clause in self.clauses))
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise MalformedFormulaError(f"literal {lit} out of range for {self.n_vars} variables")

    @property
    def n_clauses(self):
        return len(self.clauses)

    def evaluate(self, truth):
        """``truth[k - 1]`` is the value of x_k."""
        return all(
            any(truth[abs(lit) - 1] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )

    def is_satisfiable(self):
        # 2^n_vars rows; only meant for small formulas
        return any(
            self.evaluate(truth)
            for truth in itertools.product((False, True), repeat=self.n_vars)
        )

    def to_dimacs(self):
        lines = [f"p cnf {self.n_vars} {self.n_clauses}"]
        lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text):
    """
    Parse DIMACS CNF text.

    Comment lines start with ``c``; the ``p cnf N M`` header must come before
    any clause; clauses are zero-terminated and may span lines. A ``%`` line
    ends the input.
    """
    n_vars = n_clauses = None
    clauses, current = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if n_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedFormulaError(f"line {number}: invalid problem line {line!r}")
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedFormulaError(f"line {number}: invalid problem line {line!r}")
            continue
        if n_vars is None:
            raise MalformedFormulaError(f"line {number}: clause before the 'p cnf' header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise MalformedFormulaError(f"line {number}: bad literal {token!r}")
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)

    if n_vars is None:
        raise MalformedFormulaError("missing 'p cnf' header")
    if current:
        raise MalformedFormulaError("last clause is not terminated by 0")
    if len(clauses) != n_clauses:
        raise MalformedFormulaError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    logger.debug(f"🔍 Parsed CNF: {n_vars} variables, {n_clauses} clauses")
    return CnfFormula(n_vars, tuple(clauses))


def random_3cnf(rng, n_vars, n_clauses):
    """Random 3-literal clauses without tautologies; a variable may repeat with the same sign."""
    clauses = []
    while len(clauses) < n_clauses:
        clause = tuple(
            rng.randint(1, n_vars) * rng.choice((1, -1)) for _ in range(3)
        )
        if any(-lit in clause for lit in clause):
            continue
        clauses.append(clause)
    return CnfFormula(n_vars, tuple(clauses))
