"""Threshold clustering of members into leak-free teams.

Two clusters are leak-free at threshold eta when every cross-cluster pair has
symmetrized propagation <= eta. The clustering produces the finest such
partition: members connected by a chain of propagation values strictly above
eta must share a cluster, and nothing else forces a merge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError
from .graph import KIND_SYMMETRIZED, PropagationMatrix


class UnionFind:
    """Disjoint sets with path compression and union by rank."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1


@dataclass(frozen=True)
class Partition:
    """Assignment of every member to exactly one cluster.

    Clusters are canonically ordered by their smallest member index and each
    cluster lists its members in ascending order, so output is byte-stable.
    """

    clusters: tuple[tuple[int, ...], ...]
    assignment: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.assignment)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.clusters}


@dataclass(frozen=True)
class LeakViolation:
    member_i: int
    member_j: int
    cluster_i: int
    cluster_j: int
    p_sym: float


@dataclass(frozen=True)
class LeakReport:
    eta: float
    violations: tuple[LeakViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _canonical_partition(groups: Iterable[Iterable[int]], n: int) -> Partition:
    clusters = sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0])
    assignment = [0] * n
    for ci, cluster in enumerate(clusters):
        for m in cluster:
            assignment[m] = ci
    return Partition(clusters=tuple(clusters), assignment=tuple(assignment))


def _check_eta(eta: float) -> None:
    if not (0.0 <= eta <= 1.0):
        raise ValidationError(f"threshold eta must lie in [0,1], got {eta}")


def dmax(cluster: Sequence[int], candidate: int, sym: PropagationMatrix) -> float:
    """Distance of a candidate to a cluster: max propagation from any member."""
    sym.require_kind(KIND_SYMMETRIZED)
    if len(cluster) == 0:
        raise ValidationError("dmax is undefined for an empty cluster")
    return float(sym.cells[list(cluster), candidate].max())


def cluster_members(
    sym: PropagationMatrix,
    eta: float,
    seeds: Sequence[int] | None = None,
) -> Partition:
    """Iterative assignment with cluster fusion.

    Starts from one cluster per seed, then repeatedly assigns each unassigned
    member to the clusters whose dmax exceeds eta, merging every cluster that
    claims the same member. A member no cluster claims becomes a new singleton
    cluster. Stops when assignments no longer change. The final partition is
    independent of the seeds; they only alter the order clusters appear in.
    """
    sym.require_kind(KIND_SYMMETRIZED)
    _check_eta(eta)
    n = sym.n
    if n == 0:
        return Partition(clusters=(), assignment=())
    if seeds is None:
        seeds = [0]
    seeds = list(seeds)
    if len(set(seeds)) != len(seeds):
        raise ValidationError(f"duplicate seeds: {seeds}")
    for s in seeds:
        if not (0 <= s < n):
            raise ValidationError(f"seed {s} out of range for n={n}")

    uf = UnionFind(n)
    assigned = np.zeros(n, dtype=bool)
    assigned[seeds] = True
    cells = sym.cells
    for a in seeds:                            # seeds above eta fuse immediately
        for b in seeds:
            if a < b and cells[a, b] > eta:
                uf.union(a, b)

    unassigned = [m for m in range(n) if not assigned[m]]
    while unassigned:
        progressed = False
        still = []
        for m in unassigned:
            # Clusters claiming m are exactly the assigned members with
            # propagation above eta; dmax of their cluster is then > eta too.
            claim = np.nonzero(assigned & (cells[:, m] > eta))[0]
            if len(claim) > 0:
                for other in claim:            # fuse all claiming clusters
                    uf.union(int(claim[0]), int(other))
                uf.union(int(claim[0]), m)
                assigned[m] = True
                progressed = True
            else:
                still.append(m)
        if not progressed and still:
            assigned[still[0]] = True          # new singleton cluster
            still = still[1:]
        unassigned = still

    groups: dict[int, list[int]] = {}
    for m in range(n):
        groups.setdefault(uf.find(m), []).append(m)
    return _canonical_partition(groups.values(), n)


def components_oracle(sym: PropagationMatrix, eta: float) -> Partition:
    """Independent oracle: connected components of the graph with edges sym > eta."""
    sym.require_kind(KIND_SYMMETRIZED)
    _check_eta(eta)
    n = sym.n
    uf = UnionFind(n)
    ii, jj = np.nonzero(np.triu(sym.cells > eta, k=1))
    for i, j in zip(ii, jj):
        uf.union(int(i), int(j))
    groups: dict[int, list[int]] = {}
    for m in range(n):
        groups.setdefault(uf.find(m), []).append(m)
    return _canonical_partition(groups.values(), n)


def verify_free_leak(
    partition: Partition, sym: PropagationMatrix, eta: float
) -> LeakReport:
    """Check every cross-cluster pair against the threshold."""
    sym.require_kind(KIND_SYMMETRIZED)
    _check_eta(eta)
    n = sym.n
    if partition.n != n:
        raise ValidationError(
            f"partition covers {partition.n} members but matrix has {n}"
        )
    assignment = np.asarray(partition.assignment)
    ii, jj = np.nonzero(np.triu(sym.cells > eta, k=1))
    violations = []
    for i, j in zip(ii, jj):
        i, j = int(i), int(j)
        if assignment[i] != assignment[j]:
            violations.append(
                LeakViolation(
                    member_i=i,
                    member_j=j,
                    cluster_i=int(assignment[i]),
                    cluster_j=int(assignment[j]),
                    p_sym=float(sym.cells[i, j]),
                )
            )
    violations.sort(key=lambda v: (v.member_i, v.member_j))
    return LeakReport(eta=eta, violations=tuple(violations))
