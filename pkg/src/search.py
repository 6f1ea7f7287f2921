"""
Propagate-and-branch enumeration of finite assignments.

Flows and colorings are both assignments of values to arcs subject to
local relations at crossings and vertices. Each relation can deduce a
missing value from the others, so the search assigns the lowest unassigned
variable, propagates everything that follows, and branches again only on
what is still free. Solutions come out in lexicographic order.
"""

import logging
from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions import BruteForceBudgetError
from .settings import brute_force_budget

LOG = logging.getLogger(__name__)

UNASSIGNED = -1
Deduction = List[Tuple[int, int]]


class Constraint:
    """A relation over a few variables."""

    variables: Tuple[int, ...] = ()

    def deduce(self, values: Sequence[int]) -> Optional[Deduction]:
        """
        Values forced by the current partial assignment.

        Returns:
            List of (variable, value) pairs, or None if the relation is
            already violated
        """
        raise NotImplementedError


class PropagationSearch:
    """
    Enumerate all assignments of `size` variables over range(domain) that
    satisfy every constraint.

    Usage:
        search = PropagationSearch(4, 3, constraints)
        for solution in search.solutions():
            ...
    """

    def __init__(
        self,
        size: int,
        domain: int,
        constraints: Sequence[Constraint],
        budget: Optional[int] = None,
        what: str = "search",
    ):
        self.size = size
        self.domain = domain
        self.constraints = list(constraints)
        self.budget = brute_force_budget(budget)
        self.what = what
        self.branches = 0
        self.watchers: List[List[int]] = [[] for _ in range(size)]
        for index, constraint in enumerate(self.constraints):
            for var in set(constraint.variables):
                self.watchers[var].append(index)

    def _propagate(self, values: List[int], pending: Sequence[int]) -> bool:
        queue = deque(pending)
        queued = set(pending)
        while queue:
            index = queue.popleft()
            queued.discard(index)
            forced = self.constraints[index].deduce(values)
            if forced is None:
                return False
            for var, value in forced:
                if values[var] == UNASSIGNED:
                    values[var] = value
                    for other in self.watchers[var]:
                        if other not in queued:
                            queued.add(other)
                            queue.append(other)
                elif values[var] != value:
                    return False
        return True

    def _branch(self, values: List[int], pending: Sequence[int]) -> Iterator[Tuple[int, ...]]:
        if not self._propagate(values, pending):
            return
        try:
            var = values.index(UNASSIGNED)
        except ValueError:
            yield tuple(values)
            return
        for value in range(self.domain):
            self.branches += 1
            if self.branches > self.budget:
                raise BruteForceBudgetError(self.budget, self.what)
            child = list(values)
            child[var] = value
            yield from self._branch(child, self.watchers[var])

    def solutions(self, fixed: Optional[Dict[int, int]] = None) -> Iterator[Tuple[int, ...]]:
        """
        Yield every solution, optionally with some variables fixed upfront.

        Raises:
            BruteForceBudgetError: If more than `budget` branch assignments
                are needed
        """
        self.branches = 0
        values = [UNASSIGNED] * self.size
        for var, value in (fixed or {}).items():
            values[var] = value
        LOG.debug(
            "%s: %d variables, domain %d, %d constraints",
            self.what, self.size, self.domain, len(self.constraints),
        )
        yield from self._branch(values, range(len(self.constraints)))

    def count(self) -> int:
        return sum(1 for _ in self.solutions())
