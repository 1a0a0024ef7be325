# solver/routes.py
"""Propagation routes by name. Every route maps (bounds) -> PropagationOutcome."""
from functools import partial

from bc_fast.propagator import propagate_bc
from bc_fast.sweep import COMPRESSED, FULL
from bc_reference.binary_search import filter_binary_search
from bc_reference.conditions import conditions_prune
from bc_reference.passes import propagate_decomposed_alldifferent
from decomposition.encoder import encode
from decomposition.engine import propagate_decomposition

FAST = "fast"
FAST_COMPRESSED = "fast-compressed"
REFERENCE = "reference"
BINARY_SEARCH = "binary-search"
DECOMP = "decomp"
# AllDifferent + binary orders; weaker than the others
BINARY = "binary"

ROUTES = (FAST, FAST_COMPRESSED, REFERENCE, BINARY_SEARCH, DECOMP, BINARY)
# routes that reach AllDiffPrec bounds consistency
BC_ROUTES = (FAST, FAST_COMPRESSED, REFERENCE, BINARY_SEARCH, DECOMP)


def make_propagator(instance, route=FAST, debug=None, trace=None):
    """
    Propagator bound to ``instance`` for the named route.

    ``decomp`` encodes the instance once here and reuses the encoding.
    ``trace`` is only used by the fast routes.
    """
    if route == FAST:
        return partial(propagate_bc, instance, mode=FULL, debug=debug, trace=trace)
    if route == FAST_COMPRESSED:
        return partial(propagate_bc, instance, mode=COMPRESSED, debug=debug, trace=trace)
    if route == REFERENCE:
        return partial(conditions_prune, instance)
    if route == BINARY_SEARCH:
        return partial(filter_binary_search, instance)
    if route == DECOMP:
        return partial(propagate_decomposition, encode(instance))
    if route == BINARY:
        return partial(propagate_decomposed_alldifferent, instance)
    raise ValueError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")


def propagate(instance, bounds=None, route=FAST, **options):
    bounds = instance.initial_bounds() if bounds is None else bounds
    return make_propagator(instance, route, **options)(bounds)
