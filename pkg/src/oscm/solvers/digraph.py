from __future__ import annotations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CycleError(ValueError):
    pass


class OrientationDigraph:
    """Acyclic digraph over ``0..n-1`` with its transitive closure kept current.

    ``reach[u]`` is the bitmask of vertices reachable from ``u`` by a nonempty
    path, ``reached_by[v]`` the bitmask of vertices that reach ``v``.
    """

    __slots__ = ("n", "arcs", "reach", "reached_by")

    def __init__(self, n: int):
        self.n = n
        self.arcs: list[tuple[int, int]] = []
        self.reach = [0] * n
        self.reached_by = [0] * n

    def copy(self) -> "OrientationDigraph":
        other = OrientationDigraph.__new__(OrientationDigraph)
        other.n = self.n
        other.arcs = list(self.arcs)
        other.reach = list(self.reach)
        other.reached_by = list(self.reached_by)
        return other

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.reach[u] >> v & 1)

    def related(self, u: int, v: int) -> bool:
        return bool((self.reach[u] | self.reached_by[u]) >> v & 1)

    def add_arc(self, u: int, v: int) -> list[tuple[int, int]]:
        """Insert ``(u, v)`` and return the newly implied ordered pairs."""
        if u == v or self.reaches(v, u):
            raise CycleError(f"arc ({u}, {v}) would close a cycle")
        self.arcs.append((u, v))
        if self.reaches(u, v):
            return []
        sources = self.reached_by[u] | (1 << u)
        targets = self.reach[v] | (1 << v)
        new_pairs = []
        reach = self.reach
        for p in _bits(sources):
            fresh = targets & ~reach[p]
            if fresh:
                reach[p] |= fresh
                new_pairs.extend((p, s) for s in _bits(fresh))
        reached_by = self.reached_by
        for s in _bits(targets):
            reached_by[s] |= sources
        return new_pairs

    def topological_order(self) -> list[int]:
        """Vertices by descending number of descendants, ties by index.

        Reaching ``v`` from ``u`` makes ``reach[u]`` a strict superset of
        ``reach[v]``, so this is always a topological order of the closure.
        """
        return sorted(range(self.n), key=lambda u: (-self.reach[u].bit_count(), u))

    def is_total(self) -> bool:
        full = (1 << self.n) - 1
        return all((self.reach[u] | self.reached_by[u] | (1 << u)) == full for u in range(self.n))
