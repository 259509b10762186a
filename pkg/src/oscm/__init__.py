"""One-sided crossing minimization: solvers, reductions and cutwidth bounds."""

from .core import (BipartiteInstance, BOrdering, FullOrdering, Graph, InstanceFormatError,
                   Solution, parse_instance, parse_ordering, parse_solution, write_instance,
                   write_ordering, write_solution)
from .crossings import (crossing_lower_bound, crossing_matrix, crossing_number,
                        total_crossings, total_crossings_by_inversions)
from .reductions import classify_pairs, lift_solution, reduce, theorem2_bound, unsuited_bound
from .solvers import solve

__version__ = "0.1.0"
