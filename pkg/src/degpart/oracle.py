"""Exhaustive ground truth for small instances.

Nothing here shares code paths with the linear-time partitioner beyond the
Graph type and the Partition container.
"""

from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .degeneracy import Partition, as_spec
from .graph import Graph
from .sat import Assignment, CnfFormula, SatVariant

MAX_SAT_VARS = 20
MAX_PAIR_VERTICES = 64


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 20_000_000
    time_limit: float = 600.0

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("search budget limits must be positive")


@dataclass(frozen=True)
class BudgetExceeded:
    """Search gave up: neither a partition nor a proof that none exists."""

    nodes: int
    seconds: float

    def __bool__(self) -> bool:
        return False


class _OutOfBudget(Exception):
    pass


def find_partition_bruteforce(g: Graph, spec, budget: SearchBudget | None = None,
                              pinned: Mapping[int, int] | None = None,
                              order: Sequence[int] | None = None) -> Partition | BudgetExceeded | None:
    """Depth-first class assignment with core pruning.

    A branch dies as soon as the vertices already placed in some class ``i``
    contain a subgraph of minimum degree ``p_i + 1``; adding vertices never
    destroys such a subgraph, so the pruning is sound.  Returns a partition,
    ``None`` when the search space is exhausted, or ``BudgetExceeded``.
    """
    spec = as_spec(spec)
    p = spec.classes
    s = len(p)
    budget = budget or SearchBudget()
    pinned = dict(pinned or {})
    adj = g.adj
    n = g.n
    if order is None:
        order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    rest = [v for v in order if v not in pinned]
    if len(set(rest)) + len(pinned) != n:
        raise ValueError("search order must list every vertex once")
    class_of = [-1] * n
    for v, c in pinned.items():
        if not _fits(adj, class_of, v, c, p[c]):
            return None
        class_of[v] = c
    # classes with equal bounds are interchangeable only while nothing is pinned
    symmetric = not pinned
    prev_twin = _previous_twins(g, rest)
    started = time.monotonic()
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        if i == len(rest):
            return True
        nodes += 1
        if nodes > budget.node_limit:
            raise _OutOfBudget
        if nodes % 4096 == 0 and time.monotonic() - started > budget.time_limit:
            raise _OutOfBudget
        v = rest[i]
        t = prev_twin[v]
        used_empty: set[int] = set()
        for c in range(class_of[t] if t >= 0 else 0, s):
            if symmetric and c not in used and p[c] in used_empty:
                continue
            if not _fits(adj, class_of, v, c, p[c]):
                continue
            fresh = c not in used
            if fresh:
                used_empty.add(p[c])
                used.add(c)
            class_of[v] = c
            if place(i + 1):
                return True
            class_of[v] = -1
            if fresh:
                used.discard(c)
        return False

    used: set[int] = set(pinned.values())
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 1000))
    try:
        found = place(0)
    except _OutOfBudget:
        return BudgetExceeded(nodes, time.monotonic() - started)
    finally:
        sys.setrecursionlimit(limit)
    return Partition(spec, class_of) if found else None


def _previous_twins(g: Graph, order: Sequence[int]) -> list[int]:
    """For each vertex, the twin placed just before it in ``order`` (or -1).

    Twins share their open or their closed neighbourhood, so permuting them
    is an automorphism; demanding non-decreasing classes along ``order``
    inside each twin group only discards symmetric copies.  Combined with
    the class-interchange rule this keeps the lexicographically least
    solution of every orbit.
    """
    groups: dict[tuple, list[int]] = {}
    for v in order:
        groups.setdefault(("closed",) + tuple(sorted(g.adj[v] + (v,))), []).append(v)
    prev = [-1] * g.n
    single = []
    for members in groups.values():
        if len(members) == 1:
            single.append(members[0])
        for a, b in zip(members, members[1:]):
            prev[b] = a
    # closed and open twin groups never overlap
    opened: dict[tuple, list[int]] = {}
    for v in single:  # already in search order
        opened.setdefault(g.adj[v], []).append(v)
    for members in opened.values():
        for a, b in zip(members, members[1:]):
            prev[b] = a
    return prev


def _fits(adj, class_of: list[int], v: int, c: int, threshold: int) -> bool:
    """Would the placed vertices of class ``c`` plus ``v`` still peel away?

    The placed part is core-free, so any new core must contain ``v``.
    """
    same = [u for u in adj[v] if class_of[u] == c]
    if len(same) <= threshold:
        return True
    # component of v inside class c, then peel it
    comp = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in comp and class_of[w] == c:
                comp.add(w)
                stack.append(w)
    deg = {u: sum(1 for w in adj[u] if w in comp) for u in comp}
    queue = [u for u, d in deg.items() if d <= threshold]
    gone = set(queue)
    while queue:
        u = queue.pop()
        if u == v:
            return True
        for w in adj[u]:
            if w in comp and w not in gone:
                deg[w] -= 1
                if deg[w] <= threshold:
                    gone.add(w)
                    queue.append(w)
    return v in gone


def all_eligible_pairs(g: Graph, max_vertices: int = MAX_PAIR_VERTICES) -> list[tuple[int, int]]:
    """Every ``x < y`` at distance exactly two whose removal keeps ``g`` connected."""
    if g.n > max_vertices:
        raise ValueError(f"all_eligible_pairs is limited to {max_vertices} vertices")
    out = []
    for x, y in itertools.combinations(range(g.n), 2):
        if y in g.adj[x] or not set(g.adj[x]) & set(g.adj[y]):
            continue
        if _connected_without(g, {x, y}):
            out.append((x, y))
    return out


def _connected_without(g: Graph, removed: set[int]) -> bool:
    left = [v for v in range(g.n) if v not in removed]
    if not left:
        return True
    seen = {left[0]}
    stack = [left[0]]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u not in removed and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(left)


# ---------------------------------------------------------------------------
# SAT enumeration


def _satisfying_rows(formula: CnfFormula, variant: SatVariant, chunk_bits: int = 16) -> Iterable[np.ndarray]:
    n = formula.num_vars
    if n > MAX_SAT_VARS:
        raise ValueError(f"exhaustive enumeration is limited to {MAX_SAT_VARS} variables, got {n}")
    total = 1 << n
    shifts = np.arange(n, dtype=np.int64)
    step = 1 << min(chunk_bits, n)
    for lo in range(0, total, step):
        idx = np.arange(lo, min(lo + step, total), dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(bool)
        ok = np.ones(len(idx), dtype=bool)
        for clause in formula.clauses:
            t = np.zeros(len(idx), dtype=np.int8)
            for lit in clause:
                col = bits[:, abs(lit) - 1]
                t += col if lit > 0 else ~col
            if variant is SatVariant.NAE:
                ok &= (t > 0) & (t < len(clause))
            elif variant is SatVariant.EXACT or len(clause) == 2:
                ok &= t == 1
            else:
                ok &= t >= 1
        if ok.any():
            yield bits[ok]


def all_satisfying_assignments(formula: CnfFormula, variant: SatVariant) -> list[Assignment]:
    out = []
    for rows in _satisfying_rows(formula, variant):
        for row in rows:
            out.append({v + 1: bool(b) for v, b in enumerate(row)})
    return out


def is_satisfiable(formula: CnfFormula, variant: SatVariant) -> bool:
    return next(iter(_satisfying_rows(formula, variant)), None) is not None
