"""A complete, budgeted square-root decision procedure.

Any square root of g uses only edges of g, so the search space is one
three-valued state (in / out / unknown) per g-edge.  Tail patterns pin
whole neighborhoods up front; after that the solver branches over unknown
pairs with two propagation rules:

  exclusion    if uw is in and u,v are non-adjacent in g, then vw is out
               (two root-neighbors of w must be adjacent in the square)
  realization  every g-edge must be an in-edge or have a common in-neighbor;
               when all options for an edge die the branch fails, and when
               one option remains its pairs are forced in

Branching is confined to pairs that still appear in a live option of some
unrealized g-edge; pairs outside every active constraint can never help,
so exhausting the constrained pairs exhausts the space.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ConstructionSelfCheckFailed, TranscriptMismatch
from .graphs import Graph, canonical_pair, verify_square_root
from .reductions import detect_tails

DEFAULT_NODE_BUDGET = 10_000_000

_UNKNOWN, _IN, _OUT = 0, 1, 2
_STATE_WORD = {_IN: "in", _OUT: "out"}


@dataclass(frozen=True)
class Contradiction:
    """Two unconditional tail consequences disagree; no root can exist."""

    pair: tuple[str, str]
    detail: str = ""


@dataclass(frozen=True)
class PartialRoot:
    """Per-candidate-edge state; pairs outside E(g) are implicitly out."""

    candidates: tuple[tuple[str, str], ...]
    forced_in: frozenset[tuple[str, str]]
    forced_out: frozenset[tuple[str, str]]
    unknown: frozenset[tuple[str, str]]

    def state(self, u: str, v: str) -> str:
        p = canonical_pair(u, v)
        if p in self.forced_in:
            return "in"
        if p in self.unknown:
            return "unknown"
        return "out"


@dataclass(frozen=True)
class SolveConfig:
    budget_nodes: int = DEFAULT_NODE_BUDGET
    log_propagations: bool = False


@dataclass(frozen=True)
class SolveOutcome:
    """Root(graph), an exhaustive no-root verdict, or a budget cutoff."""

    kind: str  # "root" | "no-root" | "inconclusive"
    root: Graph | None
    nodes_explored: int
    transcript: tuple[str, ...]
    budget_nodes: int
    log_propagations: bool


def forced_edges_from_tails(g: Graph) -> PartialRoot | Contradiction:
    """Apply every tail's unconditional consequences; nothing else.

    Each tail pins the root-neighborhoods of its four vertices, so every
    candidate pair touching them is decided.  Conflicting tails yield a
    Contradiction, which certifies that no square root exists.
    """
    state: dict[tuple[str, str], int] = {}
    for tail in detect_tails(g):
        forced_in = {
            canonical_pair(tail.v1, tail.v2),
            canonical_pair(tail.v2, tail.v3),
            canonical_pair(tail.v3, tail.v),
        } | {canonical_pair(tail.v, x) for x in tail.x}
        for p in sorted(forced_in):
            if state.get(p) == _OUT:
                return Contradiction(p, "tails force this pair both in and out")
            state[p] = _IN
        for w in (tail.v, tail.v1, tail.v2, tail.v3):
            for t in sorted(g.neighbors(w)):
                p = canonical_pair(w, t)
                if p in forced_in:
                    continue
                if state.get(p) == _IN:
                    return Contradiction(p, "tails force this pair both in and out")
                state[p] = _OUT
    candidates = tuple(sorted(g.edges))
    fin = frozenset(p for p in candidates if state.get(p) == _IN)
    fout = frozenset(p for p in candidates if state.get(p) == _OUT)
    unknown = frozenset(p for p in candidates if p not in fin and p not in fout)
    return PartialRoot(candidates, fin, fout, unknown)


class _Search:
    def __init__(self, g: Graph, config: SolveConfig):
        self.g = g
        self.config = config
        self.pairs: list[tuple[str, str]] = sorted(g.edges)
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.state = [_UNKNOWN] * len(self.pairs)
        self.adj = {v: g.neighbors(v) for v in g.vertices}
        self.sorted_adj = {v: sorted(ns) for v, ns in self.adj.items()}

        # Realization options per g-edge: the edge itself, then one option
        # per common neighbor (both wing pairs must be in).
        self.options: list[list[tuple[int, ...]]] = []
        self.occurrences: list[list[tuple[int, int]]] = [[] for _ in self.pairs]
        for ei, (u, v) in enumerate(self.pairs):
            opts: list[tuple[int, ...]] = [(ei,)]
            for w in sorted(self.adj[u] & self.adj[v]):
                opts.append(
                    (self.pair_index[canonical_pair(u, w)],
                     self.pair_index[canonical_pair(v, w)])
                )
            self.options.append(opts)
            for oi, opt in enumerate(opts):
                for pi in opt:
                    self.occurrences[pi].append((ei, oi))

        self.opt_in = [[0] * len(opts) for opts in self.options]
        self.opt_out = [[0] * len(opts) for opts in self.options]
        self.live = [len(opts) for opts in self.options]
        self.realized = [0] * len(self.pairs)
        self.unrealized = len(self.pairs)

        self.trail: list[int] = []
        self.prop_queue: deque[int] = deque()
        self.unit_queue: deque[int] = deque()
        self.transcript: list[str] = []
        self.nodes = 0
        self.conflict_pair: tuple[str, str] | None = None

    # -- state transitions ------------------------------------------------

    def _log(self, kind: str, pi: int, st: int) -> None:
        if kind == "branch" or self.config.log_propagations:
            u, v = self.pairs[pi]
            self.transcript.append(f"{kind} {u} {v} {_STATE_WORD[st]}")

    def assign(self, pi: int, st: int, kind: str) -> bool:
        current = self.state[pi]
        if current == st:
            return True
        if current != _UNKNOWN:
            self.conflict_pair = self.pairs[pi]
            return False
        self.state[pi] = st
        self.trail.append(pi)
        self._log(kind, pi, st)
        ok = True
        for ei, oi in self.occurrences[pi]:
            if st == _OUT:
                self.opt_out[ei][oi] += 1
                if self.opt_out[ei][oi] == 1:
                    self.live[ei] -= 1
                    if self.live[ei] == 0:
                        self.conflict_pair = self.pairs[ei]
                        ok = False
                    elif self.live[ei] == 1 and self.realized[ei] == 0:
                        self.unit_queue.append(ei)
            else:
                self.opt_in[ei][oi] += 1
                if self.opt_in[ei][oi] == len(self.options[ei][oi]) and self.opt_out[ei][oi] == 0:
                    self.realized[ei] += 1
                    if self.realized[ei] == 1:
                        self.unrealized -= 1
        if st == _IN:
            self.prop_queue.append(pi)
        return ok

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            pi = self.trail.pop()
            st = self.state[pi]
            for ei, oi in self.occurrences[pi]:
                if st == _OUT:
                    if self.opt_out[ei][oi] == 1:
                        self.live[ei] += 1
                    self.opt_out[ei][oi] -= 1
                else:
                    if self.opt_in[ei][oi] == len(self.options[ei][oi]) and self.opt_out[ei][oi] == 0:
                        self.realized[ei] -= 1
                        if self.realized[ei] == 0:
                            self.unrealized += 1
                    self.opt_in[ei][oi] -= 1
            self.state[pi] = _UNKNOWN

    def clear_queues(self) -> None:
        self.prop_queue.clear()
        self.unit_queue.clear()

    # -- propagation to fixpoint -------------------------------------------

    def propagate(self) -> bool:
        while True:
            if self.prop_queue:
                pi = self.prop_queue.popleft()
                u, v = self.pairs[pi]
                for w, other in ((u, v), (v, u)):
                    for t in self.sorted_adj[w]:
                        if t == other or t in self.adj[other]:
                            continue
                        qi = self.pair_index[canonical_pair(w, t)]
                        if not self.assign(qi, _OUT, "propagate"):
                            return False
            elif self.unit_queue:
                ei = self.unit_queue.popleft()
                if self.realized[ei] or self.live[ei] != 1:
                    continue
                oi = next(
                    i for i in range(len(self.options[ei])) if self.opt_out[ei][i] == 0
                )
                for pj in self.options[ei][oi]:
                    if self.state[pj] == _UNKNOWN:
                        if not self.assign(pj, _IN, "propagate"):
                            return False
            else:
                return True

    def seed(self) -> bool:
        seeded = forced_edges_from_tails(self.g)
        if isinstance(seeded, Contradiction):
            self.conflict_pair = seeded.pair
            if self.config.log_propagations:
                self.transcript.append(
                    f"propagate {seeded.pair[0]} {seeded.pair[1]} conflict"
                )
            return False
        ok = True
        for p in sorted(seeded.forced_in):
            ok = self.assign(self.pair_index[p], _IN, "propagate") and ok
        for p in sorted(seeded.forced_out):
            ok = self.assign(self.pair_index[p], _OUT, "propagate") and ok
        if not ok:
            return False
        for ei in range(len(self.pairs)):
            if self.realized[ei] == 0:
                if self.live[ei] == 0:
                    self.conflict_pair = self.pairs[ei]
                    return False
                if self.live[ei] == 1:
                    self.unit_queue.append(ei)
        return self.propagate()

    # -- branching ----------------------------------------------------------

    def choose_pair(self) -> int:
        """Unknown pair in the most live options of unrealized edges."""
        counts: dict[int, int] = {}
        for ei in range(len(self.pairs)):
            if self.realized[ei]:
                continue
            for oi, opt in enumerate(self.options[ei]):
                if self.opt_out[ei][oi]:
                    continue
                for pj in opt:
                    if self.state[pj] == _UNKNOWN:
                        counts[pj] = counts.get(pj, 0) + 1
        best_count = max(counts.values())
        return min(pj for pj, c in counts.items() if c == best_count)

    def dfs(self) -> Graph | None | str:
        if self.unrealized == 0:
            in_pairs = [p for p, st in zip(self.pairs, self.state) if st == _IN]
            return Graph(self.g.vertices, in_pairs)
        pi = self.choose_pair()
        for st in (_IN, _OUT):
            if self.nodes >= self.config.budget_nodes:
                return "inconclusive"
            self.nodes += 1
            mark = len(self.trail)
            if self.assign(pi, st, "branch") and self.propagate():
                result = self.dfs()
                if result is not None:
                    return result
            self.clear_queues()
            self.undo_to(mark)
            self.transcript.append("backtrack")
        return None


def solve_square_root(g: Graph, config: SolveConfig | None = None) -> SolveOutcome:
    """Decide whether g has any square root, exhaustively within budget.

    Returns a verified root, a no-root verdict backed by a replayable
    transcript, or an inconclusive outcome carrying the node count when
    the budget ran out first.
    """
    config = config or SolveConfig()
    search = _Search(g, config)
    if not search.seed():
        search.transcript.append("exhausted")
        return SolveOutcome(
            "no-root", None, 0, tuple(search.transcript),
            config.budget_nodes, config.log_propagations,
        )
    result = search.dfs()
    if result == "inconclusive":
        return SolveOutcome(
            "inconclusive", None, search.nodes, tuple(search.transcript),
            config.budget_nodes, config.log_propagations,
        )
    if result is None:
        search.transcript.append("exhausted")
        return SolveOutcome(
            "no-root", None, search.nodes, tuple(search.transcript),
            config.budget_nodes, config.log_propagations,
        )
    if not verify_square_root(result, g):
        raise ConstructionSelfCheckFailed("solver returned a graph that is not a root")
    return SolveOutcome(
        "root", result, search.nodes, tuple(search.transcript),
        config.budget_nodes, config.log_propagations,
    )


def initial_propagation(g: Graph) -> PartialRoot | Contradiction:
    """Tail seeding plus the propagation fixpoint, with no branching."""
    search = _Search(g, SolveConfig())
    if not search.seed():
        pair = search.conflict_pair or ("?", "?")
        return Contradiction(pair, "propagation reached a dead end")
    candidates = tuple(search.pairs)
    fin = frozenset(p for p, st in zip(search.pairs, search.state) if st == _IN)
    fout = frozenset(p for p, st in zip(search.pairs, search.state) if st == _OUT)
    unknown = frozenset(p for p, st in zip(search.pairs, search.state) if st == _UNKNOWN)
    return PartialRoot(candidates, fin, fout, unknown)


def certify_no_root(g: Graph, outcome: SolveOutcome) -> bool:
    """Re-derive a no-root verdict by replaying the deterministic search.

    False for any other outcome kind.  A replay that diverges from the
    recorded transcript raises TranscriptMismatch.
    """
    if outcome.kind != "no-root":
        return False
    replay = solve_square_root(
        g, SolveConfig(outcome.budget_nodes, outcome.log_propagations)
    )
    if replay.transcript != outcome.transcript or replay.kind != outcome.kind:
        raise TranscriptMismatch("replayed search diverged from the recorded transcript")
    return replay.transcript[-1] == "exhausted"
