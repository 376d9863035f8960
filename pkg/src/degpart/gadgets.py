"""Variable and clause gadgets turning an RSAT instance into graphs G and H
of maximum degree k, plus the maps between truth assignments and
(p, q)-partitions of those graphs.

Colour p is class 0 and colour q is class 1 of the partition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .degeneracy import Partition, PartitionSpec, validate_partition
from .graph import Graph
from .sat import Assignment, RSatInstance, SatVariant, check_assignment

UNITS = ("1", "2", "3", "4", "hat", "til")
_TRIPLE_NAMES = {
    "1": ("a:{x}:1", "ap:{x}:1", "as:{x}:1"),
    "2": ("a:{x}:2", "ap:{x}:2", "as:{x}:2"),
    "3": ("a:{x}:3", "ap:{x}:3", "as:{x}:3"),
    "4": ("a:{x}:4", "ap:{x}:4", "as:{x}:4"),
    "hat": ("hat:{x}", "hatp:{x}", "hats:{x}"),
    "til": ("til:{x}", "tilp:{x}", "tils:{x}"),
}
# the ten edges between triples of one gadget
_LINKS = [
    ("ap:{x}:1", "tilp:{x}"), ("as:{x}:1", "tils:{x}"), ("ap:{x}:2", "tils:{x}"),
    ("as:{x}:2", "til:{x}"), ("ap:{x}:3", "hatp:{x}"), ("as:{x}:3", "hats:{x}"),
    ("ap:{x}:4", "hats:{x}"), ("as:{x}:4", "hat:{x}"), ("hat:{x}", "til:{x}"),
    ("hatp:{x}", "tilp:{x}"),
]
# class holding a true literal's special vertex, per case
_TRUE_CLASS = {1: 1, 2: 0, 3: 1}
# units sharing a1's colour in every partition of the gadget; the rest take the other colour
_WITH_A1 = ("1", "2", "hat")


class GadgetError(ValueError):
    pass


class DecodeError(GadgetError):
    pass


def gadget_size(k: int) -> int:
    return 18 + 6 * (k - 2)


def build_variable_gadget(x: int, k: int) -> tuple[Graph, list[str]]:
    """``S(x, k)``: six triples, each joined completely to its own K_{k-2},
    plus the ten linking edges.  Vertices are numbered unit by unit, triple
    before clique, in the order of ``UNITS``."""
    if k < 5:
        raise GadgetError(f"gadgets need k >= 5, got {k}")
    name = f"x{x}"
    c = k - 2
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for unit in UNITS:
        base = len(labels)
        labels.extend(t.format(x=name) for t in _TRIPLE_NAMES[unit])
        labels.extend(f"K:{name}:{unit}:{j + 1}" for j in range(c))
        clique = range(base + 3, base + 3 + c)
        edges.extend((i, j) for i in clique for j in clique if i < j)
        edges.extend((t, j) for t in range(base, base + 3) for j in clique)
    index = {lab: i for i, lab in enumerate(labels)}
    edges.extend((index[a.format(x=name)], index[b.format(x=name)]) for a, b in _LINKS)
    return Graph(len(labels), edges), labels


@dataclass
class GadgetMap:
    """Vertex labels of one constructed instance.

    ``f[c][i]`` is the gadget index 1..4 used by literal ``i`` of clause ``c``
    and ``specials[c]`` lists that clause's special vertices.  Both are empty
    for a map read back from a file.
    """

    k: int
    target: str
    labels: list[str]
    f: list[tuple[int, ...]] = field(default_factory=list)
    specials: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise GadgetError("duplicate gadget labels")

    @property
    def num_vars(self) -> int:
        return sum(1 for lab in self.labels if lab.startswith("a:") and lab.endswith(":1"))

    def vertex(self, label: str) -> int:
        return self.index[label]

    def a(self, x: int, i: int) -> int:
        return self.index[f"a:x{x}:{i}"]

    def ap(self, x: int, i: int) -> int:
        return self.index[f"ap:x{x}:{i}"]

    def unit(self, x: int, unit: str) -> tuple[list[int], list[int]]:
        """(triple, clique) vertex ids of one unit of variable ``x``'s gadget."""
        triple = [self.index[t.format(x=f"x{x}")] for t in _TRIPLE_NAMES[unit]]
        clique = [self.index[f"K:x{x}:{unit}:{j + 1}"] for j in range(self.k - 2)]
        return triple, clique

    def to_text(self) -> str:
        lines = [f"p gadgetmap {self.k} {self.target}"]
        lines.extend(f"m {i + 1} {lab}" for i, lab in enumerate(self.labels))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GadgetMap":
        k = target = None
        found: dict[int, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            tok = line.split()
            if not tok or tok[0] == "c":
                continue
            if tok[0] == "p" and len(tok) == 4 and tok[1] == "gadgetmap" and tok[3] in ("G", "H"):
                k, target = int(tok[2]), tok[3]
            elif tok[0] == "m" and len(tok) == 3:
                found[int(tok[1]) - 1] = tok[2]
            else:
                raise GadgetError(f"line {lineno}: unrecognised line {line!r}")
        if k is None:
            raise GadgetError("missing 'p gadgetmap' header")
        if sorted(found) != list(range(len(found))):
            raise GadgetError("gadget map must label vertices 1..n exactly once")
        return cls(k, target, [found[i] for i in range(len(found))])


def occurrence_indices(inst: RSatInstance) -> list[tuple[int, ...]]:
    """Gadget index of every literal: j-th occurrence of ``y`` -> j,
    j-th occurrence of ``not y`` -> 2 + j."""
    seen: Counter = Counter()
    out = []
    for clause in inst.clauses:
        idx = []
        for lit in clause:
            seen[lit] += 1
            j = seen[lit]
            idx.append(j if lit > 0 else 2 + j)
        out.append(tuple(idx))
    return out


def build_instance(inst: RSatInstance, k: int, target: str) -> tuple[Graph, GadgetMap]:
    """Graph G or H for ``inst``: one gadget per variable, and per clause

    * 2-clause: ``a a`` and ``a' a'`` edges between its two literals;
    * 4-clause: the 4-cycle on its special vertices, and in H also the
      chords ``a'1 a'3`` and ``a'2 a'4``.
    """
    if target not in ("G", "H"):
        raise GadgetError(f"target must be 'G' or 'H', got {target!r}")
    if k < 5:
        raise GadgetError(f"gadgets need k >= 5, got {k}")
    if not isinstance(inst, RSatInstance):
        inst = RSatInstance(inst.num_vars, inst.clauses)
    size = gadget_size(k)
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for x in range(1, inst.num_vars + 1):
        frag, frag_labels = build_variable_gadget(x, k)
        off = len(labels)
        labels.extend(frag_labels)
        edges.extend((u + off, v + off) for u, v in frag.edges())
    assert len(labels) == size * inst.num_vars
    gmap = GadgetMap(k, target, labels)
    f = occurrence_indices(inst)
    for clause, idx in zip(inst.clauses, f):
        a = [gmap.a(abs(lit), i) for lit, i in zip(clause, idx)]
        ap = [gmap.ap(abs(lit), i) for lit, i in zip(clause, idx)]
        if len(clause) == 2:
            edges.append((a[0], a[1]))
            edges.append((ap[0], ap[1]))
        else:
            edges.extend((a[i], a[(i + 1) % 4]) for i in range(4))
            if target == "H":
                edges.append((ap[0], ap[2]))
                edges.append((ap[1], ap[3]))
        gmap.specials.append(tuple(a))
    gmap.f = f
    g = Graph(len(labels), edges)
    return g, gmap


# ---------------------------------------------------------------------------
# assignments <-> partitions


@dataclass(frozen=True)
class CaseParams:
    case: int
    p: int
    q: int
    target: str
    variant: SatVariant
    true_class: int  # class a literal's special vertex gets when the literal is true

    @property
    def spec(self) -> PartitionSpec:
        return PartitionSpec((self.p, self.q))


def case_params(case: int, k: int, p: int | None = None) -> CaseParams:
    """Parameters of the three reductions.

    case 1: (1, k-4) on G from ALL-RSAT, true literal -> colour q (k >= 6);
    case 2: (0, k-3) on H from EXACT-RSAT, true literal -> colour p (k >= 5);
    case 3: (p, k-3-p) with p, q >= 2 on H from NAE-RSAT, true -> q (k >= 7).
    """
    if k < 5:
        raise GadgetError(f"gadgets need k >= 5, got {k}")
    if case == 1:
        params = CaseParams(1, 1, k - 4, "G", SatVariant.ALL, 1)
    elif case == 2:
        params = CaseParams(2, 0, k - 3, "H", SatVariant.EXACT, 0)
    elif case == 3:
        p = 2 if p is None else p
        params = CaseParams(3, p, k - 3 - p, "H", SatVariant.NAE, 1)
    else:
        raise GadgetError(f"case must be 1, 2 or 3, got {case}")
    if case in (1, 2) and p is not None and p != params.p:
        raise GadgetError(f"case {case} fixes p = {params.p}")
    if params.q < 2 or (case == 3 and params.p < 2):
        raise GadgetError(f"case {case} is unsupported for (p, q) = ({params.p}, {params.q}), k = {k}")
    return params


def extend_assignment(inst: RSatInstance, assignment: Mapping[int, bool], k: int, case: int,
                      p: int | None = None) -> Partition:
    """(p, q)-partition of the case's instance graph encoding ``assignment``.

    Each gadget is coloured in one of its two forced states.  Every triple
    is monochromatic; its clique gets exactly ``p_c`` vertices of the
    triple's colour ``c`` and the rest the other colour.
    """
    params = case_params(case, k, p)
    if not check_assignment(inst, assignment, params.variant):
        raise GadgetError(f"assignment does not satisfy {params.variant.name}-RSAT")
    g, gmap = build_instance(inst, k, params.target)
    bound = (params.p, params.q)
    class_of = [-1] * g.n
    for x in range(1, inst.num_vars + 1):
        a1 = params.true_class if assignment[x] else 1 - params.true_class
        for unit in UNITS:
            colour = a1 if unit in _WITH_A1 else 1 - a1
            triple, clique = gmap.unit(x, unit)
            for t in triple:
                class_of[t] = colour
            for j, u in enumerate(clique):
                class_of[u] = colour if j < bound[colour] else 1 - colour
    part = Partition(params.spec, class_of)
    report = validate_partition(g, part)
    if not report.ok:
        raise GadgetError(f"canonical colouring failed on classes {sorted(report.failing)}")
    return part


def decode_partition(gmap: GadgetMap, partition: Partition, case: int) -> Assignment:
    """Read each variable from ``a(x, 1)``; the gadget must show the forced
    pattern a1 = a2 != a3 = a4."""
    true_class = _TRUE_CLASS.get(case)
    if true_class is None:
        raise GadgetError(f"case must be 1, 2 or 3, got {case}")
    if partition.n != len(gmap.labels):
        raise DecodeError(f"partition has {partition.n} vertices, map has {len(gmap.labels)}")
    colour = partition.class_of
    result: Assignment = {}
    for x in range(1, gmap.num_vars + 1):
        c1, c2, c3, c4 = (colour[gmap.a(x, i)] for i in (1, 2, 3, 4))
        if not (c1 == c2 and c3 == c4 and c1 != c3):
            raise DecodeError(f"gadget of x{x} breaks the forced pattern: a-colours {(c1, c2, c3, c4)}")
        result[x] = c1 == true_class
    return result


def gadget_order(gmap: GadgetMap) -> list[int]:
    """Search order for the oracle: per gadget, cliques before triples,
    following the chain unit 1 -> til -> hat -> 2 -> 3 -> 4."""
    order: list[int] = []
    for x in range(1, gmap.num_vars + 1):
        for unit in ("1", "til", "hat", "2", "3", "4"):
            triple, clique = gmap.unit(x, unit)
            order.extend(clique)
            order.extend(triple)
    rest = sorted(set(range(len(gmap.labels))) - set(order))
    return order + rest


def literal_truth_from_partition(gmap: GadgetMap, partition: Partition, inst: RSatInstance,
                                 case: int) -> list[tuple[bool, ...]]:
    """Truth of each clause literal as read off its special vertex."""
    true_class = _TRUE_CLASS[case]
    return [tuple(partition.class_of[v] == true_class for v in sp) for sp in gmap.specials]


def audit_degrees(g: Graph, gmap: GadgetMap) -> dict[str, int]:
    """Maximum degree per vertex role, for construction audits."""
    out: dict[str, int] = {}
    for v, lab in enumerate(gmap.labels):
        role = lab.split(":")[0]
        out[role] = max(out.get(role, 0), g.degree(v))
    return out
