"""Three-part set splitting with a planar incidence graph.

An instance is a ground set S and a collection of subsets, each of size at
least three.  A witness partitions S into three parts so that every subset
meets all three.  Instances are only considered valid when the bipartite
element/subset incidence graph is planar.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidInstance, NotAPartition
from .graphs import Graph
from .planarity import is_planar

DEFAULT_ASSIGNMENT_BUDGET = 3 ** 18


def element_vertex(e: str) -> str:
    return f"elem:{e}"


def subset_vertex(j: int) -> str:
    return f"set:{j}"


@dataclass(frozen=True, eq=False)
class SetSplitInstance:
    """Ground set plus subset collection, in declaration order.

    Duplicate subsets are allowed (they name distinct incidence vertices);
    duplicate ground elements or duplicate elements inside one subset are
    rejected outright.  Semantic equality ignores ordering everywhere.
    """

    ground_set: tuple[str, ...]
    collection: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "ground_set", tuple(self.ground_set))
        object.__setattr__(self, "collection", tuple(tuple(c) for c in self.collection))
        if len(set(self.ground_set)) != len(self.ground_set):
            raise InvalidInstance("duplicate element in ground set")
        for j, c in enumerate(self.collection):
            if len(set(c)) != len(c):
                raise InvalidInstance(f"duplicate element inside subset {j}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetSplitInstance):
            return NotImplemented
        return set(self.ground_set) == set(other.ground_set) and Counter(
            frozenset(c) for c in self.collection
        ) == Counter(frozenset(c) for c in other.collection)

    def __hash__(self) -> int:
        return hash(
            (
                frozenset(self.ground_set),
                frozenset(Counter(frozenset(c) for c in self.collection).items()),
            )
        )


@dataclass(frozen=True)
class Partition3:
    """An ordered triple of disjoint element sets; parts may be empty."""

    parts: tuple[frozenset[str], frozenset[str], frozenset[str]]

    def __post_init__(self):
        if len(self.parts) != 3:
            raise NotAPartition("a partition has exactly three parts")
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))

    @classmethod
    def of(cls, s1, s2, s3) -> "Partition3":
        return cls((frozenset(s1), frozenset(s2), frozenset(s3)))


@dataclass(frozen=True)
class Violation:
    rule: str
    subset_index: int | None = None
    message: str = ""


def incidence_graph(inst: SetSplitInstance) -> Graph:
    """Bipartite graph joining each element to the subsets containing it."""
    vertices = [element_vertex(e) for e in inst.ground_set]
    vertices += [subset_vertex(j) for j in range(len(inst.collection))]
    edges = [
        (element_vertex(e), subset_vertex(j))
        for j, c in enumerate(inst.collection)
        for e in c
    ]
    return Graph(vertices, edges)


def validate_instance(inst: SetSplitInstance) -> list[Violation]:
    """All rule violations: subset sizes, membership, incidence planarity."""
    violations: list[Violation] = []
    ground = set(inst.ground_set)
    for j, c in enumerate(inst.collection):
        if len(c) < 3:
            violations.append(
                Violation("subset-too-small", j, f"subset {j} has {len(c)} elements")
            )
        for e in c:
            if e not in ground:
                violations.append(
                    Violation("unknown-element", j, f"subset {j} uses unknown element {e!r}")
                )
    known_members = [
        [e for e in c if e in ground] for c in inst.collection
    ]
    vertices = [element_vertex(e) for e in inst.ground_set]
    vertices += [subset_vertex(j) for j in range(len(inst.collection))]
    edges = [
        (element_vertex(e), subset_vertex(j))
        for j, c in enumerate(known_members)
        for e in c
    ]
    if not is_planar(Graph(vertices, edges)):
        violations.append(Violation("incidence-not-planar", None, "incidence graph is not planar"))
    return violations


def verify_partition(inst: SetSplitInstance, p: Partition3) -> bool:
    """True iff every subset of the collection meets all three parts."""
    s1, s2, s3 = p.parts
    ground = set(inst.ground_set)
    if s1 & s2 or s1 & s3 or s2 & s3:
        raise NotAPartition("parts overlap")
    if (s1 | s2 | s3) != ground:
        raise NotAPartition("parts do not cover the ground set exactly")
    for c in inst.collection:
        members = set(c)
        if not (members & s1 and members & s2 and members & s3):
            return False
    return True


def solve_setsplit_bruteforce(
    inst: SetSplitInstance, budget: int = DEFAULT_ASSIGNMENT_BUDGET
) -> Partition3 | None:
    """First valid partition in lexicographic assignment order, or None.

    The search walks all 3^|S| part assignments depth-first in element
    order, skipping a prefix as soon as some fully-decided subset provably
    misses a part, so a None answer is exhaustive over the whole space.
    """
    n = len(inst.ground_set)
    if 3 ** n > budget:
        raise BudgetExceeded(f"3^{n} assignments exceed the budget of {budget}")
    ground = inst.ground_set
    ground_index = {e: i for i, e in enumerate(ground)}
    subsets = [sorted(ground_index[e] for e in c) for c in inst.collection]
    containing: list[list[int]] = [[] for _ in range(n)]
    for j, members in enumerate(subsets):
        for i in members:
            containing[i].append(j)

    assignment = [0] * n
    hits = [[0, 0, 0] for _ in subsets]
    remaining = [len(members) for members in subsets]

    def feasible_after(i: int, part: int) -> bool:
        for j in containing[i]:
            hits[j][part] += 1
            remaining[j] -= 1
        ok = all(
            sum(1 for h in hits[j] if h > 0) + remaining[j] >= 3
            for j in containing[i]
        )
        return ok

    def retract(i: int, part: int) -> None:
        for j in containing[i]:
            hits[j][part] -= 1
            remaining[j] += 1

    def dfs(i: int) -> bool:
        if i == n:
            return True
        for part in range(3):
            assignment[i] = part
            if feasible_after(i, part):
                if dfs(i + 1):
                    return True
                retract(i, part)
            else:
                retract(i, part)
        return False

    if not dfs(0):
        return None
    parts: list[set[str]] = [set(), set(), set()]
    for i, e in enumerate(ground):
        parts[assignment[i]].add(e)
    return Partition3.of(*parts)
