"""Safe reductions, suited/unsuited pairs and the unsuited-pair bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import BipartiteInstance, BOrdering


@dataclass(frozen=True)
class RemoveIsolated:
    v: int


@dataclass(frozen=True)
class MergeTwin:
    v: int
    into: int


Step = Union[RemoveIsolated, MergeTwin]


@dataclass(frozen=True)
class ReductionPlan:
    """Steps refer to original B-indices; ``kept[i]`` is the original index of
    reduced B-vertex ``i``."""

    original: BipartiteInstance
    steps: tuple[Step, ...]
    reduced: BipartiteInstance
    kept: tuple[int, ...]

    @property
    def n_isolated(self) -> int:
        return sum(isinstance(s, RemoveIsolated) for s in self.steps)

    @property
    def n_twins(self) -> int:
        return sum(isinstance(s, MergeTwin) for s in self.steps)


def reduce(instance: BipartiteInstance) -> ReductionPlan:
    steps: list[Step] = []
    alive = list(range(instance.n_b))
    while True:
        changed = False
        groups: dict[tuple[int, ...], int] = {}
        survivors = []
        for b in alive:
            row = instance.adj[b]
            if not row:
                steps.append(RemoveIsolated(b))
                changed = True
                continue
            # dict lookup hashes the tuple and confirms by full comparison
            rep = groups.setdefault(row, b)
            if rep != b:
                steps.append(MergeTwin(b, rep))
                changed = True
                continue
            survivors.append(b)
        alive = survivors
        # removing B-vertices never alters other B-neighborhoods, so one
        # more pass is always a no-op; kept for the fixed-point contract
        if not changed:
            break
    if not steps:
        return ReductionPlan(instance, (), instance, tuple(range(instance.n_b)))
    reduced = BipartiteInstance(
        instance.n_a,
        len(alive),
        tuple(instance.adj[b] for b in alive),
        a_labels=instance.a_labels,
        b_labels=tuple(instance.b_labels[b] for b in alive),
    )
    return ReductionPlan(instance, tuple(steps), reduced, tuple(alive))


def lift_solution(plan: ReductionPlan, sigma_reduced: BOrdering) -> BOrdering:
    """Map an ordering of the reduced B-set back to the original B-set.

    Twins go right after their representative (in merge order), isolated
    vertices are appended at the end in index order.
    """
    if len(sigma_reduced) != plan.reduced.n_b:
        raise ValueError("ordering is not a permutation of the reduced B-set")
    seq = [plan.kept[b] for b in sigma_reduced.seq]
    followers: dict[int, list[int]] = {}
    isolated = []
    for step in plan.steps:
        if isinstance(step, MergeTwin):
            followers.setdefault(step.into, []).append(step.v)
        else:
            isolated.append(step.v)
    out = []
    for b in seq:
        out.append(b)
        out.extend(followers.get(b, ()))
    out.extend(sorted(isolated))
    return BOrdering(tuple(out))


@dataclass(frozen=True)
class PairClassification:
    """``forced`` holds ordered pairs ``(u, v)`` with ``c[u, v] = 0 < c[v, u]``;
    ``unsuited`` and ``degenerate`` hold pairs ``(u, v)`` with ``u < v``."""

    forced: frozenset[tuple[int, int]]
    unsuited: frozenset[tuple[int, int]]
    degenerate: frozenset[tuple[int, int]]


def classify_pairs(matrix: np.ndarray) -> PairClassification:
    n = matrix.shape[0]
    iu, iv = np.triu_indices(n, k=1)
    cuv = matrix[iu, iv]
    cvu = matrix[iv, iu]
    forward = (cuv == 0) & (cvu > 0)
    backward = (cvu == 0) & (cuv > 0)
    unsuited = (cuv > 0) & (cvu > 0)
    degenerate = (cuv == 0) & (cvu == 0)
    forced = {(int(u), int(v)) for u, v in zip(iu[forward], iv[forward])}
    forced |= {(int(v), int(u)) for u, v in zip(iu[backward], iv[backward])}
    return PairClassification(
        frozenset(forced),
        frozenset(zip(iu[unsuited].tolist(), iv[unsuited].tolist())),
        frozenset(zip(iu[degenerate].tolist(), iv[degenerate].tolist())),
    )


def theorem2_bound(n_b: int, w: int, m: int | None = None) -> int:
    """``n_b*(w-1) - w*(w-1)/2`` clamped at zero.

    Only an upper bound on the unsuited pairs when ``n_b >= w - 1``; see
    ``unsuited_bound`` for a form valid for every ``n_b``.
    """
    if n_b < 0 or w < 0:
        raise ValueError("n_b and w must be nonnegative")
    if w == 0:
        if m is None or m > 0:
            raise ValueError("cutwidth 0 is only consistent with an edgeless graph")
        return 0
    return max(0, n_b * (w - 1) - w * (w - 1) // 2)


def unsuited_bound(n_b: int, w: int, m: int | None = None) -> int:
    """Sum over ``i`` of ``min(w-1, n_b-1-i)``: each B-vertex is unsuited with
    at most ``w-1`` later ones, and never more than the number of later ones.

    Equals ``theorem2_bound`` when ``n_b >= w - 1`` and ``C(n_b, 2)`` below.
    """
    if n_b >= w - 1 or w == 0:
        return theorem2_bound(n_b, w, m)
    return n_b * (n_b - 1) // 2
