"""Max-product propagation: single-source fixed point, all-pairs closure,
symmetrization, and a brute-force simple-path oracle.

The propagation value from an owner to a member is the maximum, over all
simple paths between them, of the product of edge probabilities along the
path. It is computed by Jacobi-style sweeps: each sweep recomputes every
member's value as the max over in-neighbors of predecessor-value times edge
probability, from the previous sweep's values, until nothing changes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import NoChannelError, ValidationError
from .graph import KIND_CLOSURE, KIND_DIRECT, KIND_SYMMETRIZED, PropagationMatrix

ORACLE_MAX_N = 12


@dataclass(frozen=True)
class EnergyVector:
    """Propagation probabilities of one owner's data to every member."""

    owner: int
    p: np.ndarray
    iterations: int          # sweeps performed, including the confirming one
    changed_sweeps: int      # sweeps in which at least one value changed
    pred: np.ndarray         # argmax predecessor per member, -1 if none
    level: np.ndarray        # sweep index at which each value last changed


@dataclass(frozen=True)
class WitnessPath:
    """A concrete simple path achieving a propagation value."""

    members: tuple[int, ...]
    product: float


def _in_edges(matrix: PropagationMatrix) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per destination: (array of in-neighbor indices, array of edge probs), p>0 only."""
    cells = matrix.cells
    n = matrix.n
    result = []
    for i in range(n):
        col = cells[:, i].copy()
        col[i] = 0.0
        ks = np.nonzero(col)[0]
        result.append((ks, col[ks]))
    return result


def propagate_from(matrix: PropagationMatrix, owner: int) -> EnergyVector:
    """Fixed point of the max-product update with the owner's value pinned to 1."""
    matrix.require_kind(KIND_DIRECT)
    n = matrix.n
    if not (0 <= owner < n):
        raise ValidationError(f"owner index {owner} out of range for n={n}")
    in_edges = _in_edges(matrix)

    p = np.zeros(n)
    p[owner] = 1.0
    pred = np.full(n, -1, dtype=int)
    level = np.zeros(n, dtype=int)
    iterations = 0
    changed_sweeps = 0
    # The value set is finite (products of input edge labels), so consecutive
    # sweeps reach exact equality; the cap guards against pathological rounding.
    cap = n + 1
    while True:
        iterations += 1
        ps = p.copy()
        for i in range(n):
            if i == owner:
                continue
            ks, ws = in_edges[i]
            if len(ks) == 0:
                continue
            cand = p[ks] * ws
            best = cand.max()
            if best > p[i]:
                ps[i] = best
                pred[i] = ks[np.nonzero(cand == best)[0][0]]  # smallest index wins
                level[i] = iterations
        if np.array_equal(ps, p):
            break
        changed_sweeps += 1
        p = ps
        if iterations >= cap:
            raise AssertionError("fixed-point iteration failed to converge")
    return EnergyVector(
        owner=owner, p=p, iterations=iterations, changed_sweeps=changed_sweeps,
        pred=pred, level=level,
    )


@numba.njit(cache=True)
def _closure_kernel(n, in_ptr, in_src, in_w):
    """Jacobi fixed point for every source. Bitwise identical to n runs of
    the single-source routine: multiplying by a probability <= 1 never
    increases a float, so the fixed point is the max over simple paths of
    the left-to-right edge product, independent of sweep schedule."""
    out = np.zeros((n, n))
    prev = np.zeros(n)
    cur = np.zeros(n)
    for owner in range(n):
        for i in range(n):
            prev[i] = 0.0
        prev[owner] = 1.0
        for _ in range(n + 1):
            changed = False
            for i in range(n):
                if i == owner:
                    cur[i] = 1.0
                    continue
                best = prev[i]
                for e in range(in_ptr[i], in_ptr[i + 1]):
                    v = prev[in_src[e]] * in_w[e]
                    if v > best:
                        best = v
                cur[i] = best
                if best != prev[i]:
                    changed = True
            prev, cur = cur, prev
            if not changed:
                break
        out[owner] = prev
    return out


def closure(matrix: PropagationMatrix) -> PropagationMatrix:
    """All-pairs propagation matrix: row i is the fixed point with owner i."""
    matrix.require_kind(KIND_DIRECT)
    n = matrix.n
    off = matrix.cells.copy()
    np.fill_diagonal(off, 0.0)
    dsts, srcs = np.nonzero(off.T > 0)        # in-edges grouped by destination
    if len(dsts) == 0:
        return PropagationMatrix(
            labels=matrix.labels, cells=matrix.cells.copy(), kind=KIND_CLOSURE
        )
    in_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(dsts, minlength=n), out=in_ptr[1:])
    cells = _closure_kernel(n, in_ptr, srcs.astype(np.int64), off[srcs, dsts])
    return PropagationMatrix(labels=matrix.labels, cells=cells, kind=KIND_CLOSURE)


def symmetrize(matrix: PropagationMatrix) -> PropagationMatrix:
    """Elementwise max(p_ij, p_ji): the leak risk between a pair in either direction."""
    matrix.require_kind(KIND_CLOSURE)
    cells = np.maximum(matrix.cells, matrix.cells.T)
    return PropagationMatrix(labels=matrix.labels, cells=cells, kind=KIND_SYMMETRIZED)


def oracle_simple_path_max(
    matrix: PropagationMatrix, owner: int, target: int
) -> tuple[float, WitnessPath | None]:
    """Exhaustive max over all simple paths owner->target of the edge-product.

    Ties break toward the lexicographically smallest member-index sequence.
    Only usable on small graphs; guards at n <= ORACLE_MAX_N.
    """
    matrix.require_kind(KIND_DIRECT)
    n = matrix.n
    if n > ORACLE_MAX_N:
        raise ValidationError(
            f"oracle enumeration refused for n={n} > {ORACLE_MAX_N}"
        )
    if not (0 <= owner < n) or not (0 <= target < n):
        raise ValidationError("owner/target index out of range")
    if owner == target:
        return 1.0, WitnessPath(members=(owner,), product=1.0)

    cells = matrix.cells
    best_p = 0.0
    best_path: tuple[int, ...] | None = None
    visited = [False] * n
    path = [owner]

    def dfs(node: int, product: float):
        nonlocal best_p, best_path
        visited[node] = True
        for nxt in range(n):
            if visited[nxt] or nxt == node:
                continue
            w = cells[node, nxt]
            if w == 0.0:
                continue
            q = product * w
            if nxt == target:
                cand = tuple(path) + (target,)
                if q > best_p or (q == best_p and
                                  (best_path is None or cand < best_path)):
                    best_p = q
                    best_path = cand
                continue
            path.append(nxt)
            dfs(nxt, q)
            path.pop()
        visited[node] = False

    dfs(owner, 1.0)
    if best_path is None:
        return 0.0, None
    return best_p, WitnessPath(members=best_path, product=best_p)


def witness_path(matrix: PropagationMatrix, owner: int, target: int) -> WitnessPath:
    """A simple path achieving the fixed-point value at target.

    Reconstructed from the argmax predecessors recorded during iteration;
    the recorded sweep levels strictly decrease along the chain, so the
    walk back to the owner terminates and never repeats a member.
    """
    energy = propagate_from(matrix, owner)
    if target == owner:
        return WitnessPath(members=(owner,), product=1.0)
    if energy.p[target] == 0.0:
        raise NoChannelError(
            f"no channel: no p>0 path from member {owner} to member {target}"
        )
    chain = [target]
    node = target
    while node != owner:
        node = int(energy.pred[node])
        chain.append(node)
    chain.reverse()
    product = 1.0
    for a, b in zip(chain, chain[1:]):
        product = product * matrix.cells[a, b]
    return WitnessPath(members=tuple(chain), product=product)
