# bc_fast/union_find.py
"""
Interval union-find and the two value lines built on it.

A value line records which values have been claimed during one sweep of
the upper-bound pruning and answers the four queries the sweep needs:

* ``next_free(x)``: the smallest free value >= x;
* ``run_start(x)``: the smallest y such that every value in [y, x - 1] is
  taken (x itself when x - 1 is free);
* ``take(c)``: mark a free value as taken;
* ``advance(b, steps)``: move past ``steps`` free values starting from b.

``FullValueLine`` keeps one element per value in 1..top+1.
``CompressedValueLine`` keeps one element per distinct lower bound (plus a
sentinel) with a taken-prefix counter per block.
"""
from bisect import bisect_right

from core.exceptions import InvariantViolation


class IntervalUnionFind:
    """Disjoint sets over 1..size whose sets are always contiguous ranges."""

    def __init__(self, size):
        """
        Create ``size`` singleton sets {1}, ..., {size}.

        :param size: number of elements in the structure
        """
        self.size = size
        self.parent = list(range(size + 1))
        self.rank = [0] * (size + 1)
        self.low = list(range(size + 1))
        self.high = list(range(size + 1))
        self.finds = 0
        self.unions = 0

    def find(self, element: int) -> int:
        """
        Canonical element of the set holding ``element``.

        Complexity: O(α(n)) amortized
        """
        self.finds += 1
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def min(self, element: int) -> int:
        return self.low[self.find(element)]

    def max(self, element: int) -> int:
        return self.high[self.find(element)]

    def union(self, element: int, neighbour: int) -> int:
        """
        Merge the set of ``element`` with the set holding ``neighbour``.

        ``neighbour`` must be max(set of element) + 1, so the merged set is
        again a contiguous range.

        :returns: canonical element of the merged set
        """
        first = self.find(element)
        if neighbour != self.high[first] + 1 or neighbour > self.size:
            raise InvariantViolation(
                f"union of {element} with non-adjacent {neighbour} "
                f"(set spans [{self.low[first]},{self.high[first]}])"
            )
        second = self.find(neighbour)
        self.unions += 1
        low, high = self.low[first], self.high[second]
        if self.rank[first] < self.rank[second]:
            first, second = second, first
        elif self.rank[first] == self.rank[second]:
            self.rank[first] += 1
        self.parent[second] = first
        self.low[first], self.high[first] = low, high
        return first


class FullValueLine:
    """One union-find element per value 1..top+1; a taken value is unioned with its right neighbour."""

    def __init__(self, top):
        self.sets = IntervalUnionFind(top + 1)

    @property
    def universe_size(self):
        return self.sets.size

    def next_free(self, x):
        return self.sets.max(x)

    def is_free(self, x):
        return self.sets.max(x) == x

    def run_start(self, x):
        return self.sets.min(x)

    def take(self, value):
        self.sets.union(value, value + 1)

    def advance(self, b, steps):
        for _ in range(steps):
            b = self.next_free(b) + 1
        return b


class CompressedValueLine:
    """
    Blocks [l_k, l_{k+1}) at the distinct lower bounds, one element each.

    Claims always start at some lower bound, so the taken values of a block
    form a prefix of it and one counter per block is enough. A full block is
    unioned with the next one; each set is a run of full blocks followed by
    one block with room left.
    """

    def __init__(self, lower_bounds, top):
        self.starts = sorted(set(lower_bounds))
        # sentinel block past top + 1, never claimed from
        self.starts.append(top + 2)
        self.capacity = [
            self.starts[k + 1] - self.starts[k] for k in range(len(self.starts) - 1)
        ] + [1]
        self.taken = [0] * len(self.starts)
        self.sets = IntervalUnionFind(len(self.starts))

    @property
    def universe_size(self):
        return self.sets.size

    def _block(self, x):
        return bisect_right(self.starts, x) - 1

    def _first_free(self, k):
        return self.starts[k] + self.taken[k]

    def next_free(self, x):
        k = self._block(x)
        if k < 0 or x >= self._first_free(k):
            return x
        # union-find elements are 1-based: block k is element k + 1
        return self._first_free(self.sets.max(k + 1) - 1)

    def is_free(self, x):
        k = self._block(x)
        return k < 0 or x >= self._first_free(k)

    def run_start(self, x):
        k = self._block(x - 1)
        if k < 0 or x - 1 >= self._first_free(k):
            return x
        return self.starts[self.sets.min(k + 1) - 1]

    def take(self, value):
        k = self._block(value)
        if k < 0 or value != self._first_free(k):
            raise InvariantViolation(f"value {value} is not the next free value of its block")
        self.taken[k] += 1
        if self.taken[k] == self.capacity[k]:
            self.sets.union(k + 1, k + 2)

    def _segment_end(self, x):
        k = self._block(x)
        return self.starts[0] if k < 0 else self.starts[k + 1]

    def advance(self, b, steps):
        while steps:
            x = self.next_free(b)
            span = self._segment_end(x) - x
            if steps <= span:
                return x + steps
            steps -= span
            b = x + span
        return b
