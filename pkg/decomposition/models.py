# decomposition/models.py
"""
Variables and constraints of the Boolean decomposition.

Variable ids 0..n-1 are the integer variables X_i themselves; Booleans are
numbered after them. Keys identify a variable independently of its id:

* ``("X", i)``: the integer variable X_i
* ``("B", i, l)``: B_il, true iff X_i <= l
* ``("A", i, l, u)``: A_ilu, true iff l <= X_i <= u
"""
from dataclasses import dataclass, field

CHANNEL_B = "channel_Bil"
CHANNEL_A = "channel_Ailu"
INTERVAL_SUM = "interval_sum"
SUCCESSOR_SUM = "successor_sum"
PREDECESSOR_SUM = "predecessor_sum"
STRICT_LESS = "strict_less"

KINDS = (CHANNEL_B, CHANNEL_A, INTERVAL_SUM, SUCCESSOR_SUM, PREDECESSOR_SUM, STRICT_LESS)
SUM_KINDS = (INTERVAL_SUM, SUCCESSOR_SUM, PREDECESSOR_SUM)


@dataclass(frozen=True)
class BoolVar:
    id: int
    key: tuple
    lb: int = 0
    ub: int = 1

    @property
    def is_fixed(self):
        return self.lb == self.ub


@dataclass(frozen=True)
class DecompConstraint:
    """
    One constraint of the decomposition.

    * ``channel_Bil``: variables (X_i, B_il), constant l.
    * ``channel_Ailu``: variables (A_ilu, B_iu) when l = 1, otherwise
      (A_ilu, B_i(l-1), B_iu) with B_i(l-1) in ``negated``.
    * sums: ``variables`` are the summed literals, ids in ``negated`` enter
      as 1 - B; ``fixed_terms`` literals are constant true. The bound is
      ``constant``; when ``guard`` is set the sum is only required while
      the guard is true.
    * ``strict_less``: variables (X_i, X_j).
    """

    kind: str
    variables: tuple
    constant: int = 0
    negated: frozenset = field(default_factory=frozenset)
    fixed_terms: int = 0
    guard: int = None

    def __post_init__(self):
        arity = len(self.variables)
        if self.kind not in KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind in (CHANNEL_B, STRICT_LESS) and arity != 2:
            raise ValueError(f"{self.kind} takes 2 variables, got {arity}")
        if self.kind == CHANNEL_A and arity not in (2, 3):
            raise ValueError(f"{self.kind} takes 2 or 3 variables, got {arity}")
        if self.kind in (SUCCESSOR_SUM, PREDECESSOR_SUM) and self.guard is None:
            raise ValueError(f"{self.kind} needs a guard")

    @property
    def watched(self):
        return self.variables if self.guard is None else self.variables + (self.guard,)


@dataclass(frozen=True)
class Encoding:
    instance: object
    booleans: tuple
    constraints: tuple
    ids: dict

    @property
    def n(self):
        return self.instance.n

    @property
    def variable_count(self):
        return self.instance.n + len(self.booleans)

    def id_of(self, key):
        return self.ids[key]

    def count(self, prefix):
        """Number of Booleans whose key starts with ``prefix`` ("B" or "A")."""
        return sum(1 for var in self.booleans if var.key[0] == prefix)

    def constraints_of(self, kind):
        return [c for c in self.constraints if c.kind == kind]
