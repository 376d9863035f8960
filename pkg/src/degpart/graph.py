"""Simple undirected graphs on dense integer vertices, plus the structural
queries the partitioning algorithms need (components, blocks, generators).
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or violated graph preconditions."""


class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    ``adj[v]`` is a sorted tuple of the neighbours of ``v``.
    """

    __slots__ = ("n", "m", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        """Build from neighbour collections; symmetry and simplicity are checked."""
        g = cls.__new__(cls)
        g.adj = tuple(tuple(sorted(a)) for a in adj)
        g.n = len(g.adj)
        total = 0
        for v, a in enumerate(g.adj):
            for i, u in enumerate(a):
                if u == v or (i and a[i - 1] == u):
                    raise GraphError(f"adjacency of {v} is not simple")
            total += len(a)
        if total % 2:
            raise GraphError("adjacency is not symmetric")
        g.m = total // 2
        return g

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are short relative to n; bisect is not worth it
        return v in a if len(a) < 16 else _bisect_contains(a, v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, a in enumerate(self.adj):
            for v in a:
                if u < v:
                    yield u, v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bisect_contains(a: tuple[int, ...], v: int) -> bool:
    from bisect import bisect_left

    i = bisect_left(a, v)
    return i < len(a) and a[i] == v


def check_invariants(g: Graph) -> None:
    """Assert simplicity, symmetry and the edge count of ``g``."""
    total = 0
    for v, a in enumerate(g.adj):
        assert list(a) == sorted(set(a)), f"adjacency of {v} not sorted/simple"
        for u in a:
            assert u != v, f"self-loop at {v}"
            assert v in g.adj[u], f"asymmetric edge {v}-{u}"
        total += len(a)
    assert total == 2 * g.m


def induced_subgraph(g: Graph, vertices: Iterable[int], counter=None) -> tuple[Graph, list[int]]:
    """Return ``(h, old)`` where ``h`` is ``g[vertices]`` relabelled to
    ``0..len-1`` and ``old[i]`` is the original id of ``h``'s vertex ``i``."""
    old = list(vertices)
    new = {v: i for i, v in enumerate(old)}
    adj = [[new[u] for u in g.adj[v] if u in new] for v in old]
    if counter is not None:
        counter.vertex_visits += len(old)
        counter.edge_scans += sum(len(g.adj[v]) for v in old)
    h = Graph.__new__(Graph)
    h.adj = tuple(tuple(sorted(a)) for a in adj)
    h.n = len(old)
    h.m = sum(len(a) for a in adj) // 2
    return h, old


# ---------------------------------------------------------------------------
# file format


def parse_graph(text: str | bytes) -> Graph:
    """Parse the ``p edge`` format (1-based vertex ids)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("c ") or line == "c":
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(tok) != 4 or tok[1] != "edge":
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            n, m = _ints(tok[2:], lineno)
            if n < 0 or m < 0:
                raise GraphError(f"line {lineno}: negative size")
        elif tok[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise GraphError(f"line {lineno}: malformed edge {line!r}")
            u, v = _ints(tok[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"line {lineno}: vertex id out of range in {line!r}")
            if u == v:
                raise GraphError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphError(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise GraphError("missing 'p edge' header")
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def serialize_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural queries


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def is_k_regular(g: Graph, k: int) -> bool:
    return all(len(a) == k for a in g.adj)


def is_complete(g: Graph) -> bool:
    return all(len(a) == g.n - 1 for a in g.adj)


def is_cycle(g: Graph) -> bool:
    """True iff ``g`` is a single cycle on at least three vertices."""
    return g.n >= 3 and is_k_regular(g, 2) and len(connected_components(g)) == 1


def connected_components(g: Graph, counter=None) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        i = 0
        while i < len(comp):
            v = comp[i]
            i += 1
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        comps.append(comp)
    if counter is not None:
        counter.vertex_visits += g.n
        counter.edge_scans += 2 * g.m
    return comps


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> list[int]:
    """Hop distances from ``source`` (-1 when unreachable or beyond ``limit``)."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


@dataclass
class BlockDecomposition:
    """Blocks (maximal 2-connected pieces, bridges, isolated vertices) and
    cut vertices of a graph.

    ``block_adjacency`` maps every cut vertex to the indices of the blocks
    containing it; together these are the block-cut tree.
    """

    blocks: list[tuple[int, ...]]
    cut_vertices: frozenset[int]
    block_adjacency: dict[int, list[int]] = field(default_factory=dict)

    def blocks_of(self, v: int) -> list[int]:
        if v in self.block_adjacency:
            return self.block_adjacency[v]
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_cut_tree(g: Graph, counter=None) -> BlockDecomposition:
    """Hopcroft-Tarjan lowpoint DFS, iterative, O(n + m)."""
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    blocks: list[tuple[int, ...]] = []
    is_cut = [False] * n
    parent = [-1] * n
    nxt = [0] * n  # next neighbour index to scan
    time = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = time
        time += 1
        if not adj[root]:
            blocks.append((root,))
            continue
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [root]
        while stack:
            v = stack[-1]
            nbrs = adj[v]
            i = nxt[v]
            if i < len(nbrs):
                nxt[v] = i + 1
                u = nbrs[i]
                if disc[u] < 0:
                    disc[u] = low[u] = time
                    time += 1
                    parent[u] = v
                    edge_stack.append((v, u))
                    stack.append(u)
                    if v == root:
                        root_children += 1
                elif u != parent[v] and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    if disc[u] < low[v]:
                        low[v] = disc[u]
                continue
            stack.pop()
            if not stack:
                break
            p = parent[v]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                if p != root:
                    is_cut[p] = True
                members = set()
                while True:
                    a, b = edge_stack.pop()
                    members.add(a)
                    members.add(b)
                    if a == p and b == v:
                        break
                blocks.append(tuple(sorted(members)))
        if root_children >= 2:
            is_cut[root] = True
    cuts = frozenset(v for v in range(n) if is_cut[v])
    block_adjacency: dict[int, list[int]] = {c: [] for c in cuts}
    for i, b in enumerate(blocks):
        for v in b:
            if is_cut[v]:
                block_adjacency[v].append(i)
    if counter is not None:
        counter.vertex_visits += n
        counter.edge_scans += 2 * g.m
    return BlockDecomposition(blocks, cuts, block_adjacency)


def end_blocks(d: BlockDecomposition) -> list[tuple[tuple[int, ...], int]]:
    """Blocks containing exactly one cut vertex, paired with that vertex."""
    if not d.cut_vertices:
        raise GraphError("graph has no cut vertex, hence no end blocks")
    result = []
    for b in d.blocks:
        cuts = [v for v in b if v in d.cut_vertices]
        if len(cuts) == 1:
            result.append((b, cuts[0]))
    return result


def is_biconnected(g: Graph) -> bool:
    """Connected, at least three vertices, and no cut vertex."""
    if g.n < 3:
        return False
    d = block_cut_tree(g)
    return len(d.blocks) == 1


# ---------------------------------------------------------------------------
# generators


class GenerationError(GraphError):
    pass


def random_degree_sequence_graph(degrees: Sequence[int], seed: int | random.Random | None = None,
                                 attempts: int = 200) -> Graph:
    """Simple graph with the given degree sequence from the pairing model.

    Colliding pairs (loops, repeated edges) are put back and re-paired
    rather than discarding the whole pairing; a whole attempt is abandoned
    only when the leftover points admit no legal pair.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if sum(degrees) % 2:
        raise GenerationError("degree sum is odd")
    n = len(degrees)
    for _ in range(attempts):
        edges = _try_pairing(n, degrees, rng)
        if edges is not None:
            return Graph(n, sorted(edges))
    raise GenerationError(f"pairing model failed {attempts} times")


def _try_pairing(n: int, degrees: Sequence[int], rng: random.Random) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    points = [v for v in range(n) for _ in range(degrees[v])]
    stalled = 0
    while points:
        rng.shuffle(points)
        leftover: list[int] = []
        it = iter(points)
        for a, b in zip(it, it):
            if a > b:
                a, b = b, a
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                leftover.append(a)
                leftover.append(b)
        if leftover:
            pending = sorted(set(leftover))
            if not any((a, b) not in edges for i, a in enumerate(pending) for b in pending[i + 1:]):
                return None
        # a legal pair may exist without a legal perfect matching of the rest
        stalled = stalled + 1 if len(leftover) == len(points) else 0
        if stalled > 20:
            return None
        points = leftover
    return edges


def random_regular(n: int, k: int, seed: int | None = None) -> Graph:
    if k < 0 or k >= n:
        raise GenerationError(f"need 0 <= k < n, got n={n}, k={k}")
    if (n * k) % 2:
        raise GenerationError(f"infeasible: n*k = {n * k} is odd")
    return random_degree_sequence_graph([k] * n, seed)


def complete_graph(t: int) -> Graph:
    return Graph(t, [(u, v) for u in range(t) for v in range(u + 1, t)])


def cycle_graph(t: int) -> Graph:
    if t < 3:
        raise GraphError("a cycle needs at least three vertices")
    return Graph(t, [(i, (i + 1) % t) for i in range(t)])


def path_graph(t: int) -> Graph:
    return Graph(t, [(i, i + 1) for i in range(t - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph(off, edges)


def _bridged_k4s() -> Graph:
    # two K4s with one edge subdivided each, subdivision vertices joined
    edges = []
    for off in (0, 5):
        a, b, c, d, s = (off + i for i in range(5))
        edges += [(a, c), (a, d), (b, c), (b, d), (c, d), (a, s), (b, s)]
    edges.append((4, 9))
    return Graph(10, edges)


def _double_k5_minus_edge() -> Graph:
    # 4-regular, centre vertex 0 is a cut vertex between two K5-minus-an-edge lobes
    edges = []
    for off in (1, 6):
        lobe = [off + i for i in range(5)]
        for i in range(5):
            for j in range(i + 1, 5):
                if (i, j) != (0, 1):
                    edges.append((lobe[i], lobe[j]))
        edges += [(0, lobe[0]), (0, lobe[1])]
    return Graph(11, edges)


_NAMED = {
    "petersen": petersen,
    "q3": lambda: hypercube(3),
    "cube": lambda: hypercube(3),
    "prism": lambda: Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
    "bowtie": lambda: Graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
    "bridged-k4": _bridged_k4s,
    "bowtie4": _double_k5_minus_edge,
}


def named_graph(name: str) -> Graph:
    """Curated graphs: petersen, q3, prism, bowtie, bridged-k4, bowtie4,
    and the families K<t>, C<t>, P<t>, Q<d>."""
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key]()
    match = re.fullmatch(r"([kcpq])_?(\d+)", key)
    if match:
        kind, t = match.group(1), int(match.group(2))
        return {"k": complete_graph, "c": cycle_graph, "p": path_graph, "q": hypercube}[kind](t)
    raise GraphError(f"unknown graph name {name!r}")
