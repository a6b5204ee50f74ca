import random
from itertools import combinations, permutations

import pytest

from sqroot import (
    APEX_LABELS,
    Graph,
    Partition3,
    SetSplitInstance,
    color_to_setsplit,
    coloring_to_partition,
    complete_graph,
    cycle_graph,
    detect_tails,
    edge_families,
    extend_coloring,
    is_apex_with,
    is_planar,
    partition_to_coloring,
    partition_to_root,
    restrict_coloring,
    root_to_partition,
    setsplit_to_graph,
    solve_coloring_bruteforce,
    solve_setsplit_bruteforce,
    square,
    verify_partition,
    verify_square_root,
)
from sqroot.errors import (
    EmptyCollection,
    EmptyEdgeSet,
    ImproperColoring,
    InvalidInstance,
    InvalidPartition,
    NotASquareRoot,
    NotPlanar,
)
from sqroot.reductions import a_label, b_label, element_label, helper_label, set_label

from oracles import colorable3_bruteforce, graph_from_mask, pair_list, random_valid_instance


def single_triple_instance():
    return SetSplitInstance(("a", "b", "c"), (("a", "b", "c"),))


def family_count_laws(inst):
    S, C = inst.ground_set, inst.collection
    overlaps = sum(
        1 for j in range(len(C)) for k in range(j + 1, len(C)) if set(C[j]) & set(C[k])
    )
    return {
        "element_clique": len(S) * (len(S) - 1) // 2,
        "element_ab": 6 * len(S),
        "set_ab": 6 * len(C),
        "set_overlap": overlaps,
        "set_tail": 5 * len(C) + 2 * sum(len(c) for c in C),
        "ab_core": 12,
        "b_tail": 18 + 3 * len(S),
    }


# -- coloring -> set splitting ----------------------------------------------------

def test_reduce_k3():
    red = color_to_setsplit(complete_graph(["x", "y", "w"]))
    assert len(red.instance.ground_set) == 6
    assert len(red.instance.collection) == 3
    assert all(len(c) == 3 for c in red.instance.collection)
    assert {helper_label("x", "y"), helper_label("y", "w"), helper_label("x", "w")} <= set(
        red.instance.ground_set
    )
    assert not any(v for v in red.instance.collection if len(set(v)) != 3)


def test_reduce_single_edge():
    red = color_to_setsplit(Graph(["x", "y"], [("x", "y")]))
    z = helper_label("x", "y")
    assert red.instance == SetSplitInstance(("x", "y", z), ((z, "x", "y"),))
    assert red.element_roles[z].kind == "EdgeHelper"
    assert red.element_roles["x"].kind == "Original"


def test_reduce_k4_sizes():
    red = color_to_setsplit(complete_graph(["p", "q", "r", "s"]))
    assert len(red.instance.ground_set) == 10
    assert len(red.instance.collection) == 6


def test_reduce_rejects_nonplanar():
    with pytest.raises(NotPlanar):
        color_to_setsplit(complete_graph(list("abcde")))


def test_reduce_rejects_edgeless():
    with pytest.raises(EmptyEdgeSet):
        color_to_setsplit(Graph(["a", "b"]))


def test_reduced_instance_always_validates():
    rng = random.Random(3)
    from sqroot import validate_instance

    for _ in range(30):
        mask = rng.randrange(1 << 15)
        g = graph_from_mask(6, mask)
        if g.m == 0 or not is_planar(g):
            continue
        red = color_to_setsplit(g)
        assert validate_instance(red.instance) == []
        assert len(red.instance.collection) == g.m


# -- coloring <-> partition --------------------------------------------------------

def test_coloring_partition_roundtrip_single_edge():
    red = color_to_setsplit(Graph(["x", "y"], [("x", "y")]))
    z = helper_label("x", "y")
    lifted = extend_coloring(red, {"x": 1, "y": 2})
    assert lifted[z] == 3
    p = coloring_to_partition(red, lifted)
    assert p == Partition3.of({"x"}, {"y"}, {z})
    back = partition_to_coloring(red, p)
    assert back == lifted
    assert restrict_coloring(red, back) == {"x": 1, "y": 2}


def test_color_permutation_permutes_partition():
    red = color_to_setsplit(complete_graph(["x", "y", "w"]))
    base = solve_coloring_bruteforce(red.source)
    for perm in permutations((1, 2, 3)):
        recolored = {v: perm[c - 1] for v, c in base.items()}
        p = coloring_to_partition(red, extend_coloring(red, recolored))
        assert verify_partition(red.instance, p)


def test_extend_rejects_improper():
    red = color_to_setsplit(complete_graph(["x", "y", "w"]))
    with pytest.raises(ImproperColoring):
        extend_coloring(red, {"x": 1, "y": 1, "w": 2})
    with pytest.raises(ImproperColoring):
        extend_coloring(red, {"x": 1, "y": 2})


def test_partition_to_coloring_rejects_invalid():
    red = color_to_setsplit(Graph(["x", "y"], [("x", "y")]))
    z = helper_label("x", "y")
    with pytest.raises(InvalidPartition):
        partition_to_coloring(red, Partition3.of({"x", "y", z}, set(), set()))


def test_partition_to_coloring_proper_on_valid():
    g = cycle_graph(["r", "s", "t", "u"])
    red = color_to_setsplit(g)
    p = solve_setsplit_bruteforce(red.instance)
    assert p is not None
    coloring = partition_to_coloring(red, p)
    restricted = restrict_coloring(red, coloring)
    assert all(restricted[u] != restricted[v] for u, v in g.edges)


# -- the gadget construction ---------------------------------------------------------

def test_gadget_worked_example_sizes():
    gg = setsplit_to_graph(single_triple_instance())
    assert gg.graph.n == 22
    assert gg.graph.m == 77
    fams = edge_families(single_triple_instance())
    assert {k: len(v) for k, v in fams.items()} == {
        "element_clique": 3,
        "element_ab": 18,
        "set_ab": 6,
        "set_overlap": 0,
        "set_tail": 11,
        "ab_core": 12,
        "b_tail": 27,
    }


def test_gadget_k3_pipeline_size():
    red = color_to_setsplit(complete_graph(["x", "y", "w"]))
    gg = setsplit_to_graph(red.instance)
    assert gg.graph.n == 33  # 6 + 4*3 + 15


def test_gadget_disjoint_subsets_have_no_overlap_edge():
    inst = SetSplitInstance(
        ("a", "b", "c", "d", "e", "f"), (("a", "b", "c"), ("d", "e", "f"))
    )
    gg = setsplit_to_graph(inst)
    assert not gg.graph.has_edge(set_label(0), set_label(1))
    assert edge_families(inst)["set_overlap"] == frozenset()


def test_gadget_rejects_empty_collection():
    with pytest.raises(EmptyCollection):
        setsplit_to_graph(SetSplitInstance(("a", "b", "c"), ()))


def test_gadget_rejects_invalid_instance():
    with pytest.raises(InvalidInstance):
        setsplit_to_graph(SetSplitInstance(("a", "b"), (("a", "b"),)))


def test_gadget_size_laws_hold_on_random_instances():
    rng = random.Random(17)
    for _ in range(40):
        inst = random_valid_instance(rng)
        gg = setsplit_to_graph(inst)
        S, C = inst.ground_set, inst.collection
        assert gg.graph.n == len(S) + 4 * len(C) + 15
        fams = edge_families(inst)
        assert {k: len(v) for k, v in fams.items()} == family_count_laws(inst)
        assert sum(len(v) for v in fams.values()) == gg.graph.m
        # selectors form an independent set, but reach every hub
        for i, j in combinations((1, 2, 3), 2):
            assert gg.graph.has_edge(a_label(i), b_label(j))
            assert not gg.graph.has_edge(a_label(i), a_label(j))


def test_gadget_roles_cover_all_vertices():
    gg = setsplit_to_graph(single_triple_instance())
    assert set(gg.roles) == set(gg.graph.vertices)
    kinds = {r.kind for r in gg.roles.values()}
    assert kinds == {"Element", "SetVertex", "SetTail", "A", "B", "BTail"}


# -- partition -> root -----------------------------------------------------------------

def test_partition_to_root_worked_example():
    gg = setsplit_to_graph(single_triple_instance())
    h = partition_to_root(gg, Partition3.of({"a"}, {"b"}, {"c"}))
    assert h.m == 30  # 6 for the set gadget, 7 per hub gadget, 3 selector edges
    assert verify_square_root(h, gg.graph)
    assert is_apex_with(h, APEX_LABELS).remainder_planar


def test_partition_to_root_rejects_invalid():
    gg = setsplit_to_graph(single_triple_instance())
    with pytest.raises(InvalidPartition):
        partition_to_root(gg, Partition3.of({"a", "b"}, {"c"}, set()))
    with pytest.raises(InvalidPartition):
        partition_to_root(gg, Partition3.of({"a", "b"}, {"b"}, {"c"}))


def test_k3_pipeline_root_end_to_end():
    red = color_to_setsplit(complete_graph(["x", "y", "w"]))
    gg = setsplit_to_graph(red.instance)
    p = solve_setsplit_bruteforce(red.instance)
    assert p is not None
    h = partition_to_root(gg, p)
    assert verify_square_root(h, gg.graph)
    assert is_apex_with(h, APEX_LABELS).remainder_planar


# -- root -> partition ----------------------------------------------------------------

def test_root_to_partition_roundtrip_exact():
    gg = setsplit_to_graph(single_triple_instance())
    p = Partition3.of({"a"}, {"b"}, {"c"})
    h = partition_to_root(gg, p)
    assert root_to_partition(gg, h) == p


def test_root_to_partition_rebuild_stability():
    rng = random.Random(23)
    for _ in range(15):
        inst = random_valid_instance(rng, max_elements=6, max_subsets=4)
        p = solve_setsplit_bruteforce(inst)
        if p is None:
            continue
        gg = setsplit_to_graph(inst)
        h = partition_to_root(gg, p)
        extracted = root_to_partition(gg, h)
        assert extracted.parts[0] == p.parts[0]
        assert extracted.parts[1] == p.parts[1]
        rebuilt = partition_to_root(gg, extracted)
        assert rebuilt.edges == h.edges


def test_root_to_partition_rejects_non_roots():
    gg = setsplit_to_graph(single_triple_instance())
    with pytest.raises(NotASquareRoot):
        root_to_partition(gg, gg.graph)  # the gadget is not its own root


# -- tails ------------------------------------------------------------------------------

def test_gadget_tails_are_exactly_the_built_ones():
    inst = single_triple_instance()
    gg = setsplit_to_graph(inst)
    tails = detect_tails(gg.graph)
    assert len(tails) == 4
    by_anchor = {t.v: t for t in tails}
    elements = {element_label(s) for s in inst.ground_set}
    assert by_anchor[set_label(0)].x == frozenset(elements)
    for i in (1, 2, 3):
        assert by_anchor[b_label(i)].x == frozenset(elements | {a_label(i)})


def test_tail_count_scales_with_collection():
    rng = random.Random(29)
    for _ in range(20):
        inst = random_valid_instance(rng, max_elements=7, max_subsets=5)
        gg = setsplit_to_graph(inst)
        assert len(detect_tails(gg.graph)) == len(inst.collection) + 3


def test_no_tails_in_c4():
    assert detect_tails(cycle_graph(["a", "b", "c", "d"])) == []


def planted_tail_graph(asymmetric: bool):
    vertices = ["v", "v1", "v2", "v3", "u"]
    edges = [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v"), ("v3", "v"), ("v", "u")]
    if asymmetric:
        # the u-v3 edge breaks the v2/v3 symmetry; the pendant w keeps u
        # itself from becoming a second degree-two tail tip
        vertices.append("w")
        edges += [("v3", "u"), ("u", "w")]
    return Graph(vertices, edges)


def test_planted_symmetric_tail_reports_both_labelings():
    # With no way to tell the two middle vertices apart the scan reports
    # the site twice, once per labeling, and the two forcings disagree.
    tails = detect_tails(planted_tail_graph(asymmetric=False))
    assert len(tails) == 2
    assert {(t.v, t.v1) for t in tails} == {("v", "v1")}
    assert {t.v2 for t in tails} == {"v2", "v3"}
    assert all(t.x == frozenset() for t in tails)


def test_planted_asymmetric_tail_unique():
    tails = detect_tails(planted_tail_graph(asymmetric=True))
    assert len(tails) == 1
    t = tails[0]
    assert (t.v, t.v1, t.v2, t.v3, set(t.x)) == ("v", "v1", "v2", "v3", {"u"})


def test_tail_requires_extra_neighbor_of_anchor():
    # Without the extra neighbor u the pattern fails N(v) != {v2, v3}.
    g = Graph(["v", "v1", "v2", "v3"],
              [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v"), ("v3", "v")])
    assert detect_tails(g) == []


# -- reduction equivalence, desk scale -----------------------------------------------------

def test_colorability_equivalence_on_all_small_planar_graphs():
    # Exhaustive over every labeled planar graph with an edge and at most
    # six vertices: 3-colorable iff the reduced instance splits.
    checked = 0
    for n in range(2, 7):
        for mask in range(1 << len(pair_list(n))):
            g = graph_from_mask(n, mask)
            if g.m == 0 or not is_planar(g):
                continue
            red = color_to_setsplit(g)
            split = solve_setsplit_bruteforce(red.instance)
            assert (split is not None) == colorable3_bruteforce(g)
            checked += 1
    assert checked > 30000
