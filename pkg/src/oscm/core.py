"""Instance model, orderings and PACE-style file I/O.

Internally everything is 0-based.  A-vertices are identified with their
position in the fixed ordering of A (position ``p`` in ``0..n_a-1``), and
B-vertices with an index ``0..n_b-1``.  When a bipartite instance is viewed as
a plain graph, A-position ``p`` becomes vertex ``p`` and B-index ``b`` becomes
vertex ``n_a + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InstanceFormatError(ValueError):
    """Raised when an instance, ordering or solution file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_permutation(seq: Sequence[int], n: int, what: str) -> None:
    if len(seq) != n or sorted(seq) != list(range(n)):
        raise ValueError(f"{what} is not a permutation of 0..{n - 1}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"invalid edge ({u}, {v}) for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class BipartiteInstance:
    """An OSCM instance with A stored in its fixed order.

    ``adj[b]`` is the strictly increasing tuple of A-positions adjacent to
    B-vertex ``b``.
    """

    n_a: int
    n_b: int
    adj: tuple[tuple[int, ...], ...]
    a_labels: tuple[int, ...] = field(default=())
    b_labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n_a < 0 or self.n_b < 0:
            raise ValueError("negative side size")
        adj = tuple(tuple(int(x) for x in row) for row in self.adj)
        if len(adj) != self.n_b:
            raise ValueError(f"expected {self.n_b} adjacency rows, got {len(adj)}")
        for b, row in enumerate(adj):
            for i, a in enumerate(row):
                if not 0 <= a < self.n_a:
                    raise ValueError(f"B-vertex {b}: A-position {a} out of range")
                if i and row[i - 1] >= a:
                    raise ValueError(f"B-vertex {b}: adjacency not strictly increasing")
        object.__setattr__(self, "adj", adj)
        a_labels = tuple(self.a_labels) or tuple(range(1, self.n_a + 1))
        b_labels = tuple(self.b_labels) or tuple(range(self.n_a + 1, self.n_a + self.n_b + 1))
        if len(a_labels) != self.n_a or len(b_labels) != self.n_b:
            raise ValueError("label count does not match side sizes")
        if len(set(a_labels) | set(b_labels)) != self.n_a + self.n_b:
            raise ValueError("vertex labels are not unique")
        object.__setattr__(self, "a_labels", a_labels)
        object.__setattr__(self, "b_labels", b_labels)

    @classmethod
    def from_edges(cls, n_a: int, n_b: int, edges: Iterable[tuple[int, int]], **labels):
        """Build from 0-based ``(a_position, b_index)`` pairs; duplicates rejected."""
        rows: list[set[int]] = [set() for _ in range(n_b)]
        for a, b in edges:
            if not 0 <= b < n_b:
                raise ValueError(f"B-index {b} out of range")
            if a in rows[b]:
                raise ValueError(f"duplicate edge ({a}, {b})")
            rows[b].add(a)
        return cls(n_a, n_b, tuple(tuple(sorted(r)) for r in rows), **labels)

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.adj)

    @property
    def n(self) -> int:
        return self.n_a + self.n_b

    def degree(self, b: int) -> int:
        return len(self.adj[b])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(a_position, b_index)``, grouped by B-vertex."""
        return [(a, b) for b, row in enumerate(self.adj) for a in row]

    def to_graph(self) -> Graph:
        return Graph(self.n, tuple((a, self.n_a + b) for a, b in self.edges()))

    def label_of(self, vertex: int) -> int:
        """External label of an internal graph vertex id."""
        if vertex < self.n_a:
            return self.a_labels[vertex]
        return self.b_labels[vertex - self.n_a]


@dataclass(frozen=True)
class FullOrdering:
    """Linear ordering of all vertices; ``order[i]`` is the vertex at rank ``i``."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        _check_permutation(self.order, len(self.order), "FullOrdering")

    @classmethod
    def identity(cls, n: int) -> "FullOrdering":
        return cls(tuple(range(n)))

    def positions(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def respects_a_order(self, instance: BipartiteInstance) -> bool:
        """True iff the A-vertices appear in their fixed order."""
        a_seq = [v for v in self.order if v < instance.n_a]
        return a_seq == list(range(instance.n_a))


@dataclass(frozen=True)
class BOrdering:
    """Linear ordering of B; ``seq[i]`` is the B-vertex at rank ``i``."""

    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        _check_permutation(self.seq, len(self.seq), "BOrdering")

    def __len__(self):
        return len(self.seq)

    def ranks(self) -> list[int]:
        rank = [0] * len(self.seq)
        for i, b in enumerate(self.seq):
            rank[b] = i
        return rank


@dataclass(frozen=True)
class Solution:
    ordering: BOrdering
    crossings: int


def _data_lines(text: str | bytes):
    if isinstance(text, bytes):
        text = text.decode("ascii")
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("c"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise InstanceFormatError(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InstanceFormatError(f"non-integer field in {line!r}", lineno) from None


def parse_instance(text: str | bytes) -> BipartiteInstance:
    """Parse a ``p ocr n_a n_b m`` instance.

    Vertex ids ``1..n_a`` are A in their fixed order, ``n_a+1..n_a+n_b`` are B.
    """
    header = None
    rows: list[set[int]] = []
    n_edges = 0
    for lineno, line in _data_lines(text):
        if header is None:
            parts = line.split()
            if len(parts) != 5 or parts[0] != "p" or parts[1] != "ocr":
                raise InstanceFormatError(f"malformed problem line {line!r}", lineno)
            try:
                n_a, n_b, m = (int(x) for x in parts[2:])
            except ValueError:
                raise InstanceFormatError(f"malformed problem line {line!r}", lineno) from None
            if min(n_a, n_b, m) < 0:
                raise InstanceFormatError("negative count in problem line", lineno)
            header = (n_a, n_b, m)
            rows = [set() for _ in range(n_b)]
            continue
        if line.startswith("p"):
            raise InstanceFormatError("second problem line", lineno)
        n_a, n_b, m = header
        x, y = _ints(line, lineno, 2)
        if not (1 <= x <= n_a + n_b and 1 <= y <= n_a + n_b):
            raise InstanceFormatError(f"edge endpoint out of range in {line!r}", lineno)
        if (x <= n_a) == (y <= n_a):
            raise InstanceFormatError(f"edge {line!r} joins two vertices of one side", lineno)
        a, b = (x, y) if x <= n_a else (y, x)
        row = rows[b - n_a - 1]
        if a - 1 in row:
            raise InstanceFormatError(f"duplicate edge {line!r}", lineno)
        row.add(a - 1)
        n_edges += 1
        if n_edges > m:
            raise InstanceFormatError(f"more than the announced {m} edges", lineno)
    if header is None:
        raise InstanceFormatError("missing problem line")
    n_a, n_b, m = header
    if n_edges != m:
        raise InstanceFormatError(f"announced {m} edges, found {n_edges}")
    return BipartiteInstance(n_a, n_b, tuple(tuple(sorted(r)) for r in rows))


def write_instance(instance: BipartiteInstance) -> str:
    lines = [f"p ocr {instance.n_a} {instance.n_b} {instance.m}"]
    for a, b in instance.edges():
        lines.append(f"{instance.a_labels[a]} {instance.b_labels[b]}")
    return "\n".join(lines) + "\n"


def _label_index(instance: BipartiteInstance) -> dict[int, int]:
    index = {lab: i for i, lab in enumerate(instance.a_labels)}
    index.update({lab: instance.n_a + i for i, lab in enumerate(instance.b_labels)})
    return index


def parse_ordering(text: str | bytes, instance: BipartiteInstance) -> FullOrdering:
    """Parse the ordering sidecar: one vertex label per line.

    The A-vertices must appear in their fixed order, since the instance already
    encodes that order through the A ids.
    """
    index = _label_index(instance)
    order: list[int] = []
    seen: set[int] = set()
    for lineno, line in _data_lines(text):
        (label,) = _ints(line, lineno, 1)
        if label not in index:
            raise InstanceFormatError(f"unknown vertex label {label}", lineno)
        v = index[label]
        if v in seen:
            raise InstanceFormatError(f"duplicate vertex label {label}", lineno)
        seen.add(v)
        order.append(v)
    if len(order) != instance.n:
        missing = sorted(instance.label_of(v) for v in set(range(instance.n)) - seen)
        raise InstanceFormatError(f"ordering misses labels {missing[:10]}")
    ordering = FullOrdering(tuple(order))
    if not ordering.respects_a_order(instance):
        raise InstanceFormatError("A-vertices do not appear in their fixed order")
    return ordering


def write_ordering(ordering: FullOrdering, instance: BipartiteInstance) -> str:
    return "".join(f"{instance.label_of(v)}\n" for v in ordering.order)


def write_solution(sol: Solution | BOrdering, instance: BipartiteInstance) -> str:
    sigma = sol.ordering if isinstance(sol, Solution) else sol
    return "".join(f"{instance.b_labels[b]}\n" for b in sigma.seq)


def parse_solution(text: str | bytes, instance: BipartiteInstance) -> BOrdering:
    index = {lab: i for i, lab in enumerate(instance.b_labels)}
    seq: list[int] = []
    for lineno, line in _data_lines(text):
        (label,) = _ints(line, lineno, 1)
        if label not in index:
            raise InstanceFormatError(f"{label} is not a B-vertex label", lineno)
        seq.append(index[label])
    if len(seq) != instance.n_b or len(set(seq)) != instance.n_b:
        raise InstanceFormatError("solution is not a permutation of B")
    return BOrdering(tuple(seq))


def write_graph(graph: Graph) -> str:
    """Plain graph file: ``p graph <n> <m>`` then 1-based edge lines."""
    lines = [f"p graph {graph.n} {graph.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"
