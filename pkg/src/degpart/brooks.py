"""Linear-time partitions of graphs of maximum degree k into floor(k/2)
forests (plus an independent set when k is odd), and their mapping onto
arbitrary 0/1 degeneracy specs.

Dispatch per connected component:

* not k-regular: greedy over a (k-1)-degenerate ordering;
* k-regular and 2-connected: identify an eligible pair and colour the
  contracted graph from the merged vertex outwards;
* k-regular with a cut vertex: split off an end block, partition both
  sides independently and glue them at the cut vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .counter import OpCounter
from .degeneracy import (
    AssignmentError,
    Partition,
    PartitionError,
    PartitionSpec,
    as_spec,
    degeneracy_ordering,
    greedy_assign,
    parent_last_ordering,
    split_forest,
)
from .graph import (
    BlockDecomposition,
    Graph,
    block_cut_tree,
    bfs_distances,
    connected_components,
    end_blocks,
    induced_subgraph,
    is_complete,
    is_cycle,
    is_k_regular,
    max_degree,
)

__all__ = [
    "OpCounter", "EligiblePair", "ForestPartition", "forest_spec",
    "forest_partition_nonregular", "find_eligible_pair", "forest_partition_2connected",
    "forest_partition_with_cut", "forest_partition", "allocate_classes", "degenerate_partition",
    "CompleteComponentError", "BoundViolation", "UnsupportedSpec", "DegreeTooSmall",
    "RegularComponentError", "PreconditionError",
]


class PreconditionError(PartitionError):
    pass


class CompleteComponentError(PreconditionError):
    def __init__(self, k: int):
        super().__init__(f"graph is K_{{k+1}}: a component is the complete graph K_{k + 1}")
        self.k = k


class DegreeTooSmall(PreconditionError):
    def __init__(self, k: int):
        super().__init__(f"maximum degree k = {k} < 3 is not supported")
        self.k = k


class RegularComponentError(PreconditionError):
    pass


class BoundViolation(PartitionError):
    pass


class UnsupportedSpec(PartitionError):
    pass


@dataclass(frozen=True)
class EligiblePair:
    """Vertices ``x``, ``y`` at distance two with common neighbour
    ``witness`` such that removing ``x`` and ``y`` leaves the graph connected."""

    x: int
    y: int
    witness: int


def forest_spec(k: int) -> PartitionSpec:
    """``floor(k/2)`` forests, then one independent set when ``k`` is odd."""
    return PartitionSpec((1,) * (k // 2) + ((0,) if k % 2 else ()))


@dataclass
class ForestPartition(Partition):
    k: int = 0

    @classmethod
    def build(cls, k: int, class_of: list[int]) -> "ForestPartition":
        return cls(forest_spec(k), class_of, k)

    @property
    def forests(self) -> int:
        return self.k // 2

    @property
    def independent_class(self) -> int | None:
        return self.k // 2 if self.k % 2 else None


def _counter(counter):
    return counter if counter is not None else OpCounter()


def _check_no_regular_component(g: Graph, k: int, counter) -> None:
    for comp in connected_components(g, counter):
        if all(len(g.adj[v]) == k for v in comp):
            raise RegularComponentError(f"a component on {len(comp)} vertices is {k}-regular")


# ---------------------------------------------------------------------------
# non-regular graphs


def forest_partition_nonregular(g: Graph, k: int, counter=None, _checked: bool = False) -> ForestPartition:
    counter = _counter(counter)
    if not _checked:
        if max_degree(g) > k:
            raise PreconditionError(f"maximum degree {max_degree(g)} exceeds k = {k}")
        _check_no_regular_component(g, k, counter)
    order, d = degeneracy_ordering(g, counter)
    if g.n and d > k - 1:
        raise PreconditionError(f"graph is {d}-degenerate, expected at most {k - 1}")
    part = greedy_assign(g, order, forest_spec(k), prefer_independent=bool(k % 2), counter=counter)
    return ForestPartition.build(k, part.class_of)


# ---------------------------------------------------------------------------
# 2-connected regular graphs


def find_eligible_pair(g: Graph, counter=None) -> EligiblePair:
    """Eligible pair of a 2-connected graph that is neither complete nor a cycle.

    Take ``v`` of maximum degree.  If ``G - v`` is 2-connected, pair ``v``
    with a vertex at distance two.  Otherwise ``v`` has a neighbour in the
    interior of each end block of ``G - v``; two such neighbours from
    different end blocks form the pair.
    """
    counter = _counter(counter)
    n = g.n
    if n < 3 or is_complete(g):
        raise PreconditionError("find_eligible_pair: graph is complete")
    if is_cycle(g):
        raise PreconditionError("find_eligible_pair: graph is a cycle")
    whole = block_cut_tree(g, counter)
    if len(whole.blocks) != 1:
        raise PreconditionError("find_eligible_pair: graph is not 2-connected")
    v = max(range(n), key=g.degree)
    h, old = induced_subgraph(g, [u for u in range(n) if u != v], counter)
    d = block_cut_tree(h, counter)
    if not d.cut_vertices:
        if g.degree(v) < n - 1:
            dist = bfs_distances(g, v, limit=2)
            counter.vertex_visits += n
            y = dist.index(2)
            w = next(u for u in g.adj[y] if dist[u] == 1)
            return EligiblePair(v, y, w)
        # v sees everything: any non-adjacent pair has v as common neighbour
        x = next(u for u in range(n) if g.degree(u) < n - 1)
        nbrs = set(g.adj[x])
        y = next(u for u in range(n) if u != x and u not in nbrs)
        return EligiblePair(x, y, v)
    vn = set(g.adj[v])
    picks = []
    for block, cut in end_blocks(d):
        interior = [old[u] for u in block if u != cut and old[u] in vn]
        if not interior:
            raise PreconditionError("find_eligible_pair: graph is not 2-connected")
        picks.append(interior[0])
        if len(picks) == 2:
            break
    x, y = picks
    return EligiblePair(x, y, v)


def forest_partition_2connected(g: Graph, k: int, counter=None, _checked: bool = False) -> ForestPartition:
    """Forest partition of a 2-connected k-regular graph other than K_{k+1}.

    ``x`` and ``y`` of an eligible pair are merged into ``z``.  The contracted
    graph is ordered ``z`` first, then ``G - {x, y}`` peeled towards the common
    neighbour; ``z`` is pinned to the class that will receive ``x`` and ``y``
    and the other common neighbours of ``x``, ``y`` are kept out of it.
    """
    counter = _counter(counter)
    if not _checked:
        if k < 3:
            raise DegreeTooSmall(k)
        if not is_k_regular(g, k):
            raise PreconditionError(f"graph is not {k}-regular")
        if g.n == k + 1:
            raise CompleteComponentError(k)
    pair = find_eligible_pair(g, counter)
    x, y, v = pair.x, pair.y, pair.witness
    n = g.n
    # relabel: every vertex except x, y keeps its rank; z takes id n - 2
    new = [0] * n
    nxt = 0
    for u in range(n):
        if u == x or u == y:
            continue
        new[u] = nxt
        nxt += 1
    z = n - 2
    new[x] = new[y] = z
    adj_star: list[list[int]] = [[] for _ in range(n - 2)]
    common: list[int] = []
    xn, yn = set(g.adj[x]), set(g.adj[y])
    for u in range(n):
        if u == x or u == y:
            continue
        adj_star[new[u]] = [new[w] for w in g.adj[u] if w != x and w != y]
        if u in xn and u in yn and u != v:
            common.append(new[u])
    counter.edge_scans += 2 * g.m
    counter.vertex_visits += n
    z_nbrs = sorted({new[w] for w in xn | yn})
    g_star = Graph.from_adjacency(adj_star)
    order = [z] + parent_last_ordering(g_star, new[v], counter)
    full_adj = [list(a) for a in adj_star]
    for c in z_nbrs:
        full_adj[c].append(z)
    full_adj.append(z_nbrs)
    g_prime = Graph.from_adjacency(full_adj)
    spec = forest_spec(k)
    z_class = len(spec) - 1 if k % 2 else 0
    part = greedy_assign(g_prime, order, spec, pinned={z: z_class},
                         forbidden={c: (z_class,) for c in common},
                         prefer_independent=bool(k % 2), counter=counter)
    assert all(part.class_of[c] != z_class for c in common), "common neighbour shares z's class"
    class_of = [0] * n
    for u in range(n):
        class_of[u] = part.class_of[new[u]]
    return ForestPartition.build(k, class_of)


def _membership(size: int, members: Iterable[int]) -> list[bool]:
    flags = [False] * size
    for u in members:
        flags[u] = True
    return flags


# ---------------------------------------------------------------------------
# regular graphs with a cut vertex


def forest_partition_with_cut(g: Graph, k: int, counter=None, blocks: BlockDecomposition | None = None,
                              _checked: bool = False) -> ForestPartition:
    """Forest partition of a connected k-regular graph with a cut vertex.

    An end block ``B`` with cut vertex ``v`` is split off.  ``G - B`` and
    ``B - v`` are non-regular and are partitioned on their own; their classes
    are paired so that ``v`` can join a class holding at most one of its
    neighbours on each side (or none, for the independent set).
    """
    counter = _counter(counter)
    if not _checked:
        if k < 3:
            raise DegreeTooSmall(k)
        if not is_k_regular(g, k):
            raise PreconditionError(f"graph is not {k}-regular")
        if len(connected_components(g)) != 1:
            raise PreconditionError("graph is not connected")
    if blocks is None:
        blocks = block_cut_tree(g, counter)
    if not blocks.cut_vertices:
        raise PreconditionError("graph has no cut vertex")
    block, v = end_blocks(blocks)[0]
    in_block = _membership(g.n, block)
    outer, outer_old = induced_subgraph(g, [u for u in range(g.n) if not in_block[u]], counter)
    inner, inner_old = induced_subgraph(g, [u for u in block if u != v], counter)
    f_out = forest_partition_nonregular(outer, k, counter, _checked=True)
    f_in = forest_partition_nonregular(inner, k, counter, _checked=True)

    spec = forest_spec(k)
    s = len(spec)
    r = k // 2
    indep = r if k % 2 else None
    vn = set(g.adj[v])
    out_nb = [i for i, u in enumerate(outer_old) if u in vn]
    in_nb = [i for i, u in enumerate(inner_old) if u in vn]

    def tally(part: Partition, nbs: list[int]) -> list[int]:
        t = [0] * s
        for i in nbs:
            t[part.class_of[i]] += 1
        return t

    a = tally(f_out, out_nb)
    b = tally(f_in, in_nb)
    # perm[c] = final class of inner class c; outer classes keep their index
    perm = list(range(s))
    v_class = _pair_forests(a, b, r, perm)
    if v_class is None and indep is not None:
        if a[indep] == 0 and b[indep] == 0:
            v_class = indep
        else:
            # v has a single outer neighbour and it sits in the outer independent
            # set: rebuild the inner partition with a neighbour w of v first so
            # that w lands in the inner independent set.
            f_in = _inner_with_neighbour_first(inner, in_nb, k, counter)
            b = tally(f_in, in_nb)
            v_class = _pair_forests(a, b, r, perm)
    if v_class is None:
        raise AssertionError("end-block combination found no class for the cut vertex")
    class_of = [0] * g.n
    for i, u in enumerate(outer_old):
        class_of[u] = f_out.class_of[i]
    for i, u in enumerate(inner_old):
        class_of[u] = perm[f_in.class_of[i]]
    class_of[v] = v_class
    return ForestPartition.build(k, class_of)


def _pair_forests(a: Sequence[int], b: Sequence[int], r: int, perm: list[int]) -> int | None:
    """Find outer forest i and inner forest j each holding at most one
    neighbour of the cut vertex; route inner j to final class i."""
    i = next((c for c in range(r) if a[c] <= 1), None)
    j = next((c for c in range(r) if b[c] <= 1), None)
    if i is None or j is None:
        return None
    perm[:r] = range(r)
    perm[j], perm[i] = i, j
    return i


def _inner_with_neighbour_first(inner: Graph, in_nb: list[int], k: int, counter) -> ForestPartition:
    w = in_nb[0]
    n = inner.n
    seen = [False] * n
    seen[w] = True
    order = [w]
    # each component of inner - w holds a neighbour of v (the block is
    # 2-connected), so rooting at those neighbours reaches every vertex
    for root in in_nb[1:]:
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        i = 0
        while i < len(comp):
            u = comp[i]
            i += 1
            for t in inner.adj[u]:
                if not seen[t]:
                    seen[t] = True
                    comp.append(t)
        comp.reverse()
        order.extend(comp)
    counter.vertex_visits += n
    counter.edge_scans += 2 * inner.m
    if len(order) != n:
        raise AssertionError("end block minus two vertices has a component without a neighbour of the cut vertex")
    part = greedy_assign(inner, order, forest_spec(k), prefer_independent=True, counter=counter)
    return ForestPartition.build(k, part.class_of)


# ---------------------------------------------------------------------------
# dispatch


def forest_partition(g: Graph, counter=None) -> ForestPartition:
    """Forest partition of ``g`` for ``k = max_degree(g) >= 3``, provided no
    component is ``K_{k+1}``."""
    counter = _counter(counter)
    k = max_degree(g)
    if k < 3:
        raise DegreeTooSmall(k)
    class_of = [0] * g.n
    for comp in connected_components(g, counter):
        sub, old = induced_subgraph(g, comp, counter)
        if is_k_regular(sub, k):
            if sub.n == k + 1:
                raise CompleteComponentError(k)
            blocks = block_cut_tree(sub, counter)
            if blocks.cut_vertices:
                fp = forest_partition_with_cut(sub, k, counter, blocks=blocks, _checked=True)
            else:
                fp = forest_partition_2connected(sub, k, counter, _checked=True)
        else:
            fp = forest_partition_nonregular(sub, k, counter, _checked=True)
        for i, u in enumerate(old):
            class_of[u] = fp.class_of[i]
    return ForestPartition.build(k, class_of)


def allocate_classes(fp: ForestPartition, spec, g: Graph) -> Partition:
    """Map a forest partition onto a 0/1 spec with ``s + t >= k``
    (``t`` = number of 1-classes).

    Forests fill 1-classes first; leftover forests are split into two
    independent sets each; the odd independent set takes a leftover 1-class
    or a 0-class.
    """
    spec = as_spec(spec)
    if any(p not in (0, 1) for p in spec):
        raise BoundViolation(f"allocate_classes needs a 0/1 spec, got {spec.classes}")
    s, t, k = len(spec), sum(spec), fp.k
    if s + t < k:
        raise BoundViolation(f"bound violated: s + t = {s + t} < k = {k}")
    ones = [i for i, p in enumerate(spec) if p == 1]
    zeros = [i for i, p in enumerate(spec) if p == 0]
    members = fp.classes()
    class_of = [0] * fp.n
    for f in range(fp.forests):
        if ones:
            target = ones.pop(0)
            for u in members[f]:
                class_of[u] = target
        else:
            even, odd = split_forest(g, members[f])
            za, zb = zeros.pop(0), zeros.pop(0)
            for u in even:
                class_of[u] = za
            for u in odd:
                class_of[u] = zb
    if fp.independent_class is not None:
        target = ones.pop(0) if ones else zeros.pop(0)
        for u in members[fp.independent_class]:
            class_of[u] = target
    return Partition(spec, class_of)


def degenerate_partition(g: Graph, spec, counter=None) -> Partition:
    """A ``(p_1, ..., p_s)``-partition of ``g`` whenever ``sum(p) >= k - s``.

    0/1 specs go through the forest partition and work on every graph but
    ``K_{k+1}``.  Other specs are handled only when no component is
    k-regular, by a greedy pass over a degeneracy ordering.
    """
    spec = as_spec(spec)
    counter = _counter(counter)
    k = max_degree(g)
    if k < 3:
        raise DegreeTooSmall(k)
    comps = connected_components(g, counter)
    regular = False
    for comp in comps:
        if all(len(g.adj[u]) == k for u in comp):
            if len(comp) == k + 1:
                raise CompleteComponentError(k)
            regular = True
    s = len(spec)
    if sum(spec) < k - s:
        raise BoundViolation(f"bound violated: sum(p) = {sum(spec)} < k - s = {k - s}")
    if all(p in (0, 1) for p in spec):
        fp = forest_partition(g, counter)
        return allocate_classes(fp, spec, g)
    if regular:
        raise UnsupportedSpec("unsupported: a component is k-regular and the spec has a class with p >= 2")
    order, _ = degeneracy_ordering(g, counter)
    try:
        return greedy_assign(g, order, spec, counter=counter)
    except AssignmentError as exc:  # pragma: no cover - capacity argument rules this out
        raise AssertionError(str(exc)) from exc
