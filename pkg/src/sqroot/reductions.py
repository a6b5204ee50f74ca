"""Reductions: planar 3-coloring to set splitting, set splitting to square roots.

The second reduction builds a gadget graph whose square roots correspond
exactly to valid three-part splittings, and both directions come with
witness translators: a partition yields a concrete 6-apex square root, and
any square root yields a partition read off its element/selector edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ConstructionSelfCheckFailed,
    DisjointnessViolated,
    EmptyCollection,
    EmptyEdgeSet,
    ImproperColoring,
    InvalidInstance,
    InvalidPartition,
    NotASquareRoot,
    NotPlanar,
)
from .graphs import Graph, canonical_pair, square, verify_square_root
from .planarity import is_apex_with, is_planar
from .setsplit import (
    NotAPartition,
    Partition3,
    SetSplitInstance,
    validate_instance,
    verify_partition,
)

COLORS = (1, 2, 3)

Coloring3 = dict[str, int]


@dataclass(frozen=True)
class Role:
    """What a vertex stands for inside a constructed graph."""

    kind: str
    args: tuple = ()


def element_label(s: str) -> str:
    return f"x:{s}"


def set_label(j: int) -> str:
    return f"c:{j}"


def set_tail_label(j: int, t: int) -> str:
    return f"xc:{t}:{j}"


def a_label(i: int) -> str:
    return f"a:{i}"


def b_label(i: int) -> str:
    return f"b:{i}"


def b_tail_label(i: int, t: int) -> str:
    return f"bt:{i}:{t}"


APEX_LABELS = frozenset(
    [a_label(1), a_label(2), a_label(3), b_label(1), b_label(2), b_label(3)]
)


# -- planar 3-coloring -> set splitting ----------------------------------------

@dataclass(frozen=True)
class ColoringReduction:
    """Result of reducing a planar graph to a set-splitting instance.

    `augmented` is the input graph with one helper vertex per edge, adjacent
    to both endpoints; the ground set is its vertex set and the collection
    holds one triangle per original edge.  `element_roles` records which
    ground elements are original vertices and which are edge helpers.
    """

    source: Graph
    augmented: Graph
    instance: SetSplitInstance
    element_roles: dict[str, Role]


def helper_label(u: str, v: str) -> str:
    u, v = canonical_pair(u, v)
    return f"z:{u}:{v}"


def color_to_setsplit(g: Graph) -> ColoringReduction:
    """Reduce 3-colorability of a planar graph to three-part set splitting."""
    if g.m == 0:
        raise EmptyEdgeSet("the input graph needs at least one edge")
    if not is_planar(g):
        raise NotPlanar("the input graph must be planar")
    sorted_edges = sorted(g.edges)
    helpers = [helper_label(u, v) for u, v in sorted_edges]
    augmented_vertices = list(g.vertices) + helpers
    augmented_edges = list(g.edges)
    for (u, v), z in zip(sorted_edges, helpers):
        augmented_edges += [(u, z), (v, z)]
    augmented = Graph(augmented_vertices, augmented_edges)
    collection = tuple(
        (u, v, z) for (u, v), z in zip(sorted_edges, helpers)
    )
    instance = SetSplitInstance(tuple(augmented_vertices), collection)
    roles: dict[str, Role] = {v: Role("Original", (v,)) for v in g.vertices}
    for (u, v), z in zip(sorted_edges, helpers):
        roles[z] = Role("EdgeHelper", (u, v))
    return ColoringReduction(g, augmented, instance, roles)


def _check_proper(g: Graph, f: Coloring3) -> str | None:
    for v in g.vertices:
        if f.get(v) not in COLORS:
            return f"vertex {v!r} has no valid color"
    for u, v in sorted(g.edges):
        if f[u] == f[v]:
            return f"edge {u!r}-{v!r} is monochromatic"
    return None


def solve_coloring_bruteforce(g: Graph) -> Coloring3 | None:
    """First proper 3-coloring in lexicographic order, or None (exhaustive)."""
    order = list(g.vertices)
    coloring: Coloring3 = {}

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {coloring[w] for w in g.neighbors(v) if w in coloring}
        for color in COLORS:
            if color in taken:
                continue
            coloring[v] = color
            if dfs(i + 1):
                return True
            del coloring[v]
        return False

    return dict(coloring) if dfs(0) else None


def extend_coloring(red: ColoringReduction, f: Coloring3) -> Coloring3:
    """Lift a proper coloring of the source onto the augmented graph.

    Every edge helper sees exactly two distinct colors, so it greedily
    takes the third.
    """
    problem = _check_proper(red.source, {v: f.get(v) for v in red.source.vertices})
    if problem:
        raise ImproperColoring(problem)
    lifted = {v: f[v] for v in red.source.vertices}
    for u, v in sorted(red.source.edges):
        (free,) = set(COLORS) - {f[u], f[v]}
        lifted[helper_label(u, v)] = free
    return lifted


def coloring_to_partition(red: ColoringReduction, f: Coloring3) -> Partition3:
    """Color classes of a proper coloring of the augmented graph."""
    problem = _check_proper(red.augmented, f)
    if problem:
        raise ImproperColoring(problem)
    parts = [set(), set(), set()]
    for v in red.augmented.vertices:
        parts[f[v] - 1].add(v)
    return Partition3.of(*parts)


def partition_to_coloring(red: ColoringReduction, p: Partition3) -> Coloring3:
    """Read a valid partition back as a proper coloring of the augmented graph."""
    try:
        ok = verify_partition(red.instance, p)
    except NotAPartition as exc:
        raise InvalidPartition(str(exc)) from exc
    if not ok:
        raise InvalidPartition("some subset misses a part")
    f = {v: i + 1 for i, part in enumerate(p.parts) for v in part}
    problem = _check_proper(red.augmented, f)
    if problem:
        raise ConstructionSelfCheckFailed(
            f"partition produced an improper coloring: {problem}"
        )
    return f


def restrict_coloring(red: ColoringReduction, f: Coloring3) -> Coloring3:
    return {v: f[v] for v in red.source.vertices}


# -- set splitting -> square-root instance -------------------------------------

@dataclass(frozen=True)
class LabeledGadgetGraph:
    graph: Graph
    roles: dict[str, Role]
    instance: SetSplitInstance


def edge_families(inst: SetSplitInstance) -> dict[str, frozenset[tuple[str, str]]]:
    """The gadget edge set, grouped by construction rule.

    element_clique   all pairs of element vertices
    element_ab       every element to every selector a:i and hub b:i
    set_ab           every subset vertex to every selector and hub
    set_overlap      subset vertices whose subsets intersect
    set_tail         per subset: the three tail vertices, their links into
                     the subset vertex, and tail/member edges
    ab_core          selector-hub and hub-hub edges
    b_tail           per hub: its tail, tail/element edges, and the tail
                     edge to the matching selector
    """
    S = inst.ground_set
    C = inst.collection
    xs = [element_label(s) for s in S]
    fam: dict[str, set[tuple[str, str]]] = {k: set() for k in (
        "element_clique", "element_ab", "set_ab", "set_overlap",
        "set_tail", "ab_core", "b_tail",
    )}
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            fam["element_clique"].add(canonical_pair(xs[i], xs[j]))
    for i in (1, 2, 3):
        for x in xs:
            fam["element_ab"].add(canonical_pair(a_label(i), x))
            fam["element_ab"].add(canonical_pair(b_label(i), x))
        for j in range(len(C)):
            fam["set_ab"].add(canonical_pair(a_label(i), set_label(j)))
            fam["set_ab"].add(canonical_pair(b_label(i), set_label(j)))
    for j in range(len(C)):
        for k in range(j + 1, len(C)):
            if set(C[j]) & set(C[k]):
                fam["set_overlap"].add(canonical_pair(set_label(j), set_label(k)))
    for j, c in enumerate(C):
        t1, t2, t3 = (set_tail_label(j, t) for t in (1, 2, 3))
        xc = set_label(j)
        fam["set_tail"] |= {
            canonical_pair(t1, t2), canonical_pair(t1, t3), canonical_pair(t2, t3),
            canonical_pair(t2, xc), canonical_pair(t3, xc),
        }
        for s in c:
            fam["set_tail"].add(canonical_pair(t3, element_label(s)))
            fam["set_tail"].add(canonical_pair(xc, element_label(s)))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            fam["ab_core"].add(canonical_pair(a_label(i), b_label(j)))
            if i < j:
                fam["ab_core"].add(canonical_pair(b_label(i), b_label(j)))
    for i in (1, 2, 3):
        t1, t2, t3 = (b_tail_label(i, t) for t in (1, 2, 3))
        bi = b_label(i)
        fam["b_tail"] |= {
            canonical_pair(t1, t2), canonical_pair(t1, t3), canonical_pair(t2, t3),
            canonical_pair(t2, bi), canonical_pair(t3, bi),
        }
        for x in xs:
            fam["b_tail"].add(canonical_pair(t3, x))
        fam["b_tail"].add(canonical_pair(t3, a_label(i)))
    return {k: frozenset(v) for k, v in fam.items()}


def setsplit_to_graph(inst: SetSplitInstance) -> LabeledGadgetGraph:
    """Build the gadget graph whose square roots encode valid partitions."""
    if not inst.collection:
        raise EmptyCollection("the subset collection must be nonempty")
    violations = validate_instance(inst)
    if violations:
        raise InvalidInstance("; ".join(str(v) for v in violations))

    vertices: list[str] = []
    roles: dict[str, Role] = {}
    for s in inst.ground_set:
        vertices.append(element_label(s))
        roles[element_label(s)] = Role("Element", (s,))
    for j in range(len(inst.collection)):
        vertices.append(set_label(j))
        roles[set_label(j)] = Role("SetVertex", (j,))
        for t in (1, 2, 3):
            vertices.append(set_tail_label(j, t))
            roles[set_tail_label(j, t)] = Role("SetTail", (j, t))
    for i in (1, 2, 3):
        vertices.append(a_label(i))
        roles[a_label(i)] = Role("A", (i,))
    for i in (1, 2, 3):
        vertices.append(b_label(i))
        roles[b_label(i)] = Role("B", (i,))
    for i in (1, 2, 3):
        for t in (1, 2, 3):
            vertices.append(b_tail_label(i, t))
            roles[b_tail_label(i, t)] = Role("BTail", (i, t))

    families = edge_families(inst)
    edges: set[tuple[str, str]] = set()
    for fam in families.values():
        if edges & fam:
            raise ConstructionSelfCheckFailed("edge families overlap")
        edges |= fam
    return LabeledGadgetGraph(Graph(vertices, sorted(edges)), roles, inst)


def partition_to_root(gg: LabeledGadgetGraph, p: Partition3) -> Graph:
    """The canonical 6-apex square root encoding a valid partition.

    The root consists of the edges forced by the tails plus one edge from
    each element to the selector of its part.  Both the squaring identity
    and planarity after removing the six selector/hub vertices are
    re-verified before returning.
    """
    inst = gg.instance
    try:
        ok = verify_partition(inst, p)
    except NotAPartition as exc:
        raise InvalidPartition(str(exc)) from exc
    if not ok:
        raise InvalidPartition("some subset misses a part")

    edges: list[tuple[str, str]] = []
    for j, c in enumerate(inst.collection):
        t1, t2, t3 = (set_tail_label(j, t) for t in (1, 2, 3))
        xc = set_label(j)
        edges += [(t1, t2), (t2, t3), (t3, xc)]
        edges += [(xc, element_label(s)) for s in c]
    for i in (1, 2, 3):
        t1, t2, t3 = (b_tail_label(i, t) for t in (1, 2, 3))
        bi = b_label(i)
        edges += [(t1, t2), (t2, t3), (t3, bi)]
        edges += [(bi, element_label(s)) for s in inst.ground_set]
        edges.append((bi, a_label(i)))
    for i, part in enumerate(p.parts, start=1):
        edges += [(element_label(s), a_label(i)) for s in sorted(part)]

    h = Graph(gg.graph.vertices, edges)
    if not verify_square_root(h, gg.graph):
        raise ConstructionSelfCheckFailed("constructed root does not square to the gadget")
    if not is_apex_with(h, APEX_LABELS).remainder_planar:
        raise ConstructionSelfCheckFailed("constructed root is not 6-apex as expected")
    return h


def root_to_partition(gg: LabeledGadgetGraph, h: Graph) -> Partition3:
    """Read a partition off any square root of the gadget graph.

    Parts one and two collect the elements whose vertices touch the
    matching selector in the root; everything else lands in part three.
    """
    if not verify_square_root(h, gg.graph):
        raise NotASquareRoot("the candidate does not square to the gadget graph")
    picked: list[set[str]] = []
    for i in (1, 2, 3):
        picked.append(
            {s for s in gg.instance.ground_set if h.has_edge(element_label(s), a_label(i))}
        )
    for i in range(3):
        for j in range(i + 1, 3):
            overlap = picked[i] & picked[j]
            if overlap:
                raise DisjointnessViolated(
                    f"element(s) {sorted(overlap)} attach to two selectors in a true root"
                )
    s1, s2 = picked[0], picked[1]
    s3 = set(gg.instance.ground_set) - s1 - s2
    p = Partition3.of(s1, s2, s3)
    if not verify_partition(gg.instance, p):
        raise ConstructionSelfCheckFailed("extracted partition fails verification")
    return p


# -- tail detection -------------------------------------------------------------

@dataclass(frozen=True)
class TailMatch:
    """A pendant three-vertex pattern that pins neighborhoods in any root.

    v1 has exactly the neighbors {v2, v3}; v2 exactly {v1, v3, v}; v3
    exactly {v1, v2, v} plus x, where x is contained in the other
    neighbors of v; and v has at least one neighbor outside {v2, v3}.
    """

    v: str
    v1: str
    v2: str
    v3: str
    x: frozenset[str]


def detect_tails(g: Graph) -> list[TailMatch]:
    """Every tail pattern in g, verbatim and unreconciled, ordered by anchor."""
    matches: list[TailMatch] = []
    for v1 in g.vertices:
        nb = g.neighbors(v1)
        if len(nb) != 2:
            continue
        first, second = sorted(nb)
        for v2, v3 in ((first, second), (second, first)):
            n2 = g.neighbors(v2)
            if len(n2) != 3 or v1 not in n2 or v3 not in n2:
                continue
            (v,) = n2 - {v1, v3}
            n3 = g.neighbors(v3)
            if not {v1, v2, v} <= n3:
                continue
            x = n3 - {v1, v2, v}
            nv = g.neighbors(v)
            if not x <= nv - {v2, v3}:
                continue
            if nv == {v2, v3}:
                continue
            matches.append(TailMatch(v, v1, v2, v3, frozenset(x)))
    matches.sort(key=lambda t: (t.v, t.v1, t.v2, t.v3))
    return matches
