"""Exact planarity testing and k-apex certificates.

The test decomposes the graph into biconnected blocks and runs a
path-addition embedding on each block: start from a cycle, then repeatedly
pick a fragment (a chord, or a component of the unembedded vertices
together with its attachments), choose a face whose boundary contains all
attachments, and embed one path of the fragment into it.  A fragment with
no admissible face proves non-planarity; otherwise the greedy choice of a
fragment with the fewest admissible faces never gets stuck on a planar
graph.  Quadratic time, which is plenty for the graph sizes handled here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, UnknownVertex
from .graphs import Graph, canonical_pair

DEFAULT_SUBSET_BUDGET = 200_000


@dataclass(frozen=True)
class ApexCertificate:
    apex_set: frozenset[str]
    remainder_planar: bool


def is_planar(g: Graph) -> bool:
    """Exact planarity of g (disconnected inputs handled per component)."""
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    for block in _biconnected_blocks(g):
        if not _block_is_planar(block):
            return False
    return True


def is_apex_with(g: Graph, apex: set[str] | frozenset[str]) -> ApexCertificate:
    """Certificate stating whether g minus the given vertices is planar."""
    apex = frozenset(apex)
    for v in apex:
        if not g.has_vertex(v):
            raise UnknownVertex(f"apex vertex {v!r} is not in the graph")
    return ApexCertificate(apex, is_planar(g.without_vertices(apex)))


def find_apex_set(
    g: Graph, k: int, subset_budget: int = DEFAULT_SUBSET_BUDGET
) -> frozenset[str] | None:
    """Some vertex set of size at most k whose removal leaves a planar graph.

    Exhaustive over all subsets in increasing size and lexicographic label
    order, so the answer is deterministic.  Returns None when no such set
    exists within size k.
    """
    ordered = sorted(g.vertex_set)
    tested = 0
    for size in range(0, k + 1):
        for combo in combinations(ordered, size):
            tested += 1
            if tested > subset_budget:
                raise BudgetExceeded(
                    f"apex search would test more than {subset_budget} subsets"
                )
            if is_planar(g.without_vertices(combo)):
                return frozenset(combo)
    return None


# -- biconnected decomposition -------------------------------------------------

def _biconnected_blocks(g: Graph) -> list[list[tuple[str, str]]]:
    """Edge sets of the biconnected blocks (bridges are single-edge blocks)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    blocks: list[list[tuple[str, str]]] = []
    edge_stack: list[tuple[str, str]] = []
    counter = [0]

    def dfs(v: str, parent: str | None) -> None:
        index[v] = low[v] = counter[0]
        counter[0] += 1
        for w in sorted(g.neighbors(v)):
            if w not in index:
                edge_stack.append((v, w))
                dfs(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= index[v]:
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append(canonical_pair(*e))
                        if e == (v, w):
                            break
                    blocks.append(block)
            elif w != parent and index[w] < index[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], index[w])

    for root in g.vertices:
        if root not in index:
            dfs(root, None)
    return blocks


# -- path-addition planarity on one biconnected block --------------------------

def _block_is_planar(block_edges: list[tuple[str, str]]) -> bool:
    m = len(block_edges)
    if m <= 2:
        return True
    verts = sorted({x for e in block_edges for x in e})
    n = len(verts)
    if m > 3 * n - 6:
        return False
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for u, v in block_edges:
        adj[u].add(v)
        adj[v].add(u)

    cycle = _find_cycle(adj)
    embedded_v = set(cycle)
    embedded_e = {canonical_pair(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    faces: list[list[str]] = [list(cycle), list(reversed(cycle))]

    while len(embedded_e) < m:
        fragments = _fragments(verts, adj, embedded_v, embedded_e)
        best: tuple[int, int, frozenset[str], object] | None = None
        for attachments, payload in fragments:
            admissible = [
                i for i, f in enumerate(faces) if attachments <= set(f)
            ]
            if not admissible:
                return False
            if best is None or len(admissible) < best[0]:
                best = (len(admissible), admissible[0], attachments, payload)
        assert best is not None
        _, face_idx, attachments, payload = best
        path = _fragment_path(payload, attachments, adj)
        for i in range(len(path) - 1):
            embedded_e.add(canonical_pair(path[i], path[i + 1]))
        embedded_v.update(path[1:-1])
        _split_face(faces, face_idx, path)
    return True


def _find_cycle(adj: dict[str, set[str]]) -> list[str]:
    path: list[str] = []
    on_path: dict[str, int] = {}
    found: list[list[str]] = []

    def dfs(v: str, parent: str | None) -> bool:
        on_path[v] = len(path)
        path.append(v)
        for w in sorted(adj[v]):
            if w == parent:
                continue
            if w in on_path:
                found.append(path[on_path[w]:])
                return True
            if dfs(w, v):
                return True
        path.pop()
        del on_path[v]
        return False

    dfs(min(adj), None)
    return found[0]


def _fragments(verts, adj, embedded_v, embedded_e):
    """Fragments relative to the current embedding.

    A fragment is either a chord (an unembedded edge between embedded
    vertices) or a component of the unembedded vertices plus its edges to
    the embedding; attachments are the embedded vertices it touches.
    """
    frags: list[tuple[frozenset[str], object]] = []
    for u in verts:
        if u not in embedded_v:
            continue
        for w in sorted(adj[u]):
            if w in embedded_v and u < w and canonical_pair(u, w) not in embedded_e:
                frags.append((frozenset((u, w)), ("chord", (u, w))))
    seen: set[str] = set()
    for r in verts:
        if r in embedded_v or r in seen:
            continue
        comp = {r}
        frontier = [r]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in embedded_v and w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        attachments = frozenset(
            w for v in comp for w in adj[v] if w in embedded_v
        )
        frags.append((attachments, ("component", frozenset(comp))))
    return frags


def _fragment_path(payload, attachments, adj) -> list[str]:
    kind, data = payload
    if kind == "chord":
        u, w = data
        return [u, w]
    comp = data
    start = min(attachments)
    targets = attachments - {start}
    parent: dict[str, str] = {}
    queue = [v for v in sorted(adj[start]) if v in comp]
    for v in queue:
        parent[v] = start
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        hit = sorted(t for t in adj[v] if t in targets)
        if hit:
            path = [hit[0], v]
            while path[-1] != start:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        for w in sorted(adj[v]):
            if w in comp and w not in parent:
                parent[w] = v
                queue.append(w)
    raise AssertionError("biconnected block fragment with a single reachable attachment")


def _split_face(faces: list[list[str]], face_idx: int, path: list[str]) -> None:
    face = faces[face_idx]
    u, v = path[0], path[-1]
    i, j = face.index(u), face.index(v)
    if i <= j:
        arc_uv = face[i : j + 1]
        arc_vu = face[j:] + face[: i + 1]
    else:
        arc_uv = face[i:] + face[: j + 1]
        arc_vu = face[j : i + 1]
    faces[face_idx] = path + arc_vu[1:-1]
    faces.append(path + arc_uv[1:-1][::-1])
