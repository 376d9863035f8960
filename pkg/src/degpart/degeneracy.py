"""Degenerate orderings, greedy class assignment and partition checking."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import Graph, GraphError, induced_subgraph


class PartitionError(ValueError):
    """A partition request that cannot be honoured as posed."""


class AssignmentError(PartitionError):
    """greedy_assign met a vertex with no admissible class.

    Callers are expected to rule this out through the ordering they pass,
    so seeing it means a precondition was broken upstream.
    """


@dataclass(frozen=True)
class PartitionSpec:
    """Requested degeneracy bound for each class, e.g. ``(1, 1, 0)``."""

    classes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(int(p) for p in self.classes))
        if not self.classes:
            raise PartitionError("a partition spec needs at least one class")
        if any(p < 0 for p in self.classes):
            raise PartitionError(f"negative degeneracy in spec {self.classes}")

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError:
            raise PartitionError(f"spec must be comma-separated integers, got {text!r}") from None

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.classes))

    @property
    def capacity(self) -> int:
        """Sum of (p_i + 1): one more than the most earlier neighbours a
        vertex may have and still be guaranteed a class."""
        return sum(p + 1 for p in self.classes)


def as_spec(spec: PartitionSpec | Iterable[int]) -> PartitionSpec:
    return spec if isinstance(spec, PartitionSpec) else PartitionSpec(tuple(spec))


@dataclass
class Partition:
    spec: PartitionSpec
    class_of: list[int]

    def __post_init__(self):
        self.spec = as_spec(self.spec)
        s = len(self.spec)
        for v, c in enumerate(self.class_of):
            if not 0 <= c < s:
                raise PartitionError(f"vertex {v} has class {c}, spec has {s} classes")

    @property
    def n(self) -> int:
        return len(self.class_of)

    def members(self, c: int) -> list[int]:
        return [v for v, cv in enumerate(self.class_of) if cv == c]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.spec]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out


@dataclass
class ValidationReport:
    """Outcome of validate_partition; ``failing`` maps each bad class to the
    residual core left after peeling it."""

    failing: dict[int, list[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failing

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# orderings


def degeneracy_ordering(g: Graph, counter=None) -> tuple[list[int], int]:
    """Bucket-queue peeling (Matula-Beck).

    Returns ``(order, d)`` where each ``order[i]`` has at most ``d``
    neighbours in ``order[:i]`` and ``d`` is the degeneracy of ``g``.
    """
    n = g.n
    adj = g.adj
    deg = [len(a) for a in adj]
    maxd = max(deg, default=0)
    # bin-sorted vertex array with positions (Batagelj-Zaversnik)
    bins = [0] * (maxd + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(maxd + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxd, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    removed = [False] * n
    degeneracy = 0
    for i in range(n):
        v = vert[i]
        removed[v] = True
        if deg[v] > degeneracy:
            degeneracy = deg[v]
        dv = deg[v]
        for u in adj[v]:
            du = deg[u]
            if not removed[u] and du > dv:
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    vert[pu], vert[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bins[du] += 1
                deg[u] = du - 1
    if counter is not None:
        counter.vertex_visits += n
        counter.edge_scans += 2 * g.m
    vert.reverse()
    return vert, degeneracy


def parent_last_ordering(g: Graph, root: int, counter=None) -> list[int]:
    """Reverse BFS order from ``root``: every vertex precedes its BFS parent,
    so each non-root vertex has a later neighbour and ``root`` comes last."""
    n = g.n
    if not 0 <= root < n:
        raise GraphError(f"root {root} not a vertex")
    seen = [False] * n
    seen[root] = True
    order = [root]
    adj = g.adj
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for u in adj[v]:
            if not seen[u]:
                seen[u] = True
                order.append(u)
    if len(order) != n:
        raise GraphError("parent_last_ordering needs a connected graph")
    if counter is not None:
        counter.vertex_visits += n
        counter.edge_scans += 2 * g.m
    order.reverse()
    return order


def earlier_neighbour_counts(g: Graph, order: Sequence[int]) -> list[int]:
    """For each position i, the number of neighbours of order[i] placed before it."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return [sum(1 for u in g.adj[v] if pos[u] < i) for i, v in enumerate(order)]


# ---------------------------------------------------------------------------
# greedy assignment


def greedy_assign(g: Graph, order: Sequence[int], spec, pinned: Mapping[int, int] | None = None,
                  forbidden: Mapping[int, Iterable[int]] | None = None,
                  prefer_independent: bool = False, counter=None) -> Partition:
    """Place vertices in ``order``, each into a class where it has at most
    ``p_q`` already-placed neighbours.

    Ties go to the lowest class index; with ``prefer_independent`` a
    0-class the vertex has no neighbour in is taken first.  Every class then
    induces a ``p_q``-degenerate subgraph, witnessed by ``order`` itself.
    """
    spec = as_spec(spec)
    p = spec.classes
    s = len(p)
    pinned = pinned or {}
    forbidden = forbidden or {}
    adj = g.adj
    class_of = [-1] * g.n
    counts = [0] * s
    zero_classes = [q for q in range(s) if p[q] == 0] if prefer_independent else []
    scans = 0
    for v in order:
        if class_of[v] >= 0:
            raise PartitionError(f"vertex {v} appears twice in the ordering")
        nbrs = adj[v]
        scans += len(nbrs)
        for u in nbrs:
            c = class_of[u]
            if c >= 0:
                counts[c] += 1
        if v in pinned:
            choice = pinned[v]
            if counts[choice] > p[choice]:
                raise AssignmentError(f"pinned vertex {v} cannot go to class {choice}")
        else:
            banned = forbidden.get(v, ())
            choice = -1
            for q in zero_classes:
                if counts[q] == 0 and q not in banned:
                    choice = q
                    break
            if choice < 0:
                for q in range(s):
                    if counts[q] <= p[q] and q not in banned:
                        choice = q
                        break
            if choice < 0:
                raise AssignmentError(
                    f"vertex {v} has no admissible class (neighbour counts {counts}, spec {p})")
        class_of[v] = choice
        for u in nbrs:
            c = class_of[u]
            if c >= 0:
                counts[c] = 0
        counts[choice] = 0
    if counter is not None:
        counter.vertex_visits += len(order)
        counter.edge_scans += 2 * scans
        counter.class_probes += s * len(order)
    if len(order) != g.n or -1 in class_of:
        raise PartitionError("ordering does not cover every vertex")
    return Partition(spec, class_of)


# ---------------------------------------------------------------------------
# validation


def peel(g: Graph, members: Iterable[int], threshold: int) -> list[int]:
    """Repeatedly delete vertices of induced degree <= ``threshold`` from
    ``g[members]``; return the residual core (empty iff degenerate enough)."""
    inside = set(members)
    deg = {v: sum(1 for u in g.adj[v] if u in inside) for v in inside}
    queue = deque(v for v, d in deg.items() if d <= threshold)
    removed = set(queue)
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if u in inside and u not in removed:
                deg[u] -= 1
                if deg[u] <= threshold:
                    removed.add(u)
                    queue.append(u)
    return sorted(inside - removed)


def validate_partition(g: Graph, partition: Partition) -> ValidationReport:
    if partition.n != g.n:
        raise PartitionError(f"partition covers {partition.n} vertices, graph has {g.n}")
    report = ValidationReport()
    for c, members in enumerate(partition.classes()):
        core = peel(g, members, partition.spec[c])
        if core:
            report.failing[c] = core
    return report


def degeneracy_of(g: Graph, members: Iterable[int]) -> int:
    """Degeneracy of the induced subgraph ``g[members]``."""
    h, _ = induced_subgraph(g, sorted(set(members)))
    return degeneracy_ordering(h)[1]


# ---------------------------------------------------------------------------
# forest splitting and refinement


def split_forest(g: Graph, forest: Iterable[int]) -> tuple[list[int], list[int]]:
    """Two-colour an induced forest by BFS layer parity."""
    members = sorted(set(forest))
    if peel(g, members, 1):
        raise PartitionError("class does not induce a forest")
    inside = set(members)
    side: dict[int, int] = {}
    for s in members:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if u in inside and u not in side:
                    side[u] = 1 - side[v]
                    queue.append(u)
    even = [v for v in members if side[v] == 0]
    odd = [v for v in members if side[v] == 1]
    return even, odd


def refine_partition(g: Graph, partition: Partition, targets: Sequence[Iterable[int]]) -> Partition:
    """Re-split every class ``c`` into ``len(targets[c])`` classes with the
    given degeneracy bounds.  Needs ``sum(t + 1) >= p_c + 1`` per class."""
    if len(targets) != len(partition.spec):
        raise PartitionError("need one target spec per original class")
    targets = [as_spec(t) for t in targets]
    new_spec: list[int] = []
    offsets = []
    for c, t in enumerate(targets):
        if t.capacity < partition.spec[c] + 1:
            raise PartitionError(
                f"class {c}: targets {t.classes} have capacity {t.capacity} < {partition.spec[c] + 1}")
        offsets.append(len(new_spec))
        new_spec.extend(t.classes)
    class_of = [0] * g.n
    for c, members in enumerate(partition.classes()):
        if not members:
            continue
        h, old = induced_subgraph(g, members)
        order, d = degeneracy_ordering(h)
        if d > partition.spec[c]:
            raise PartitionError(f"class {c} is {d}-degenerate, not {partition.spec[c]}-degenerate")
        sub = greedy_assign(h, order, targets[c])
        for i, q in enumerate(sub.class_of):
            class_of[old[i]] = offsets[c] + q
    return Partition(PartitionSpec(tuple(new_spec)), class_of)


# ---------------------------------------------------------------------------
# partition file format


def serialize_partition(partition: Partition, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p partition {len(partition.spec)} " + " ".join(map(str, partition.spec)))
    lines.extend(f"v {v + 1} {c + 1}" for v, c in enumerate(partition.class_of))
    return "\n".join(lines) + "\n"


def parse_partition(text: str | bytes, n: int | None = None) -> Partition:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    spec = None
    assigned: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("c"):
            continue
        tok = line.split()
        try:
            if tok[0] == "p":
                if len(tok) < 3 or tok[1] != "partition":
                    raise PartitionError(f"line {lineno}: malformed header {line!r}")
                s = int(tok[2])
                if len(tok) != 3 + s:
                    raise PartitionError(f"line {lineno}: header lists {len(tok) - 3} bounds, expected {s}")
                spec = PartitionSpec(tuple(int(t) for t in tok[3:]))
            elif tok[0] == "v" and len(tok) == 3:
                if spec is None:
                    raise PartitionError(f"line {lineno}: assignment before header")
                v, c = int(tok[1]) - 1, int(tok[2]) - 1
                if v in assigned:
                    raise PartitionError(f"line {lineno}: vertex {v + 1} assigned twice")
                if not 0 <= c < len(spec):
                    raise PartitionError(f"line {lineno}: class {c + 1} out of range")
                assigned[v] = c
            else:
                raise PartitionError(f"line {lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, PartitionError):
                raise
            raise PartitionError(f"line {lineno}: expected integers in {line!r}") from None
    if spec is None:
        raise PartitionError("missing 'p partition' header")
    size = len(assigned) if n is None else n
    if sorted(assigned) != list(range(size)):
        raise PartitionError(f"partition must assign each of vertices 1..{size} exactly once")
    return Partition(spec, [assigned[v] for v in range(size)])
