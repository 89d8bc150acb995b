"""Post-traversal refinement: broker allocation, graph contraction and
greedy modularity maximization."""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover
from .graph import Graph
from .traversal import NodeType, TraversalResult

MOVE_TOLERANCE = 1e-12


def initial_cover(result: TraversalResult) -> Cover:
    """Cover induced by the traversal labels (brokers keep their own id)."""
    return Cover(assignment=dict(enumerate(result.community)))


def post_process(g: Graph, cover: Cover, node_type: list[NodeType]) -> Cover:
    """Allocate brokers to seeded communities by belonging probability.

    A community is eligible when it contains at least one community-type
    node; its seeding broker retains its own label.  Every other broker joins
    the eligible community maximizing |neighbors in community| / |community|.
    A tie between maximizing communities, or the absence of any neighbor in
    an eligible community, leaves the broker unassigned for the modularity
    maximization stage.  Eligibility and probabilities are evaluated against
    the static initial cover.
    """
    members = cover.communities()
    eligible = {
        c: mem
        for c, mem in members.items()
        if any(node_type[v] == NodeType.COMMUNITY for v in mem)
    }
    assignment = dict(cover.assignment)
    unassigned: set[int] = set()
    for v in range(g.n):
        if node_type[v] != NodeType.BROKER:
            continue
        if assignment[v] in eligible:
            continue  # seeding broker stays with its community
        best_c = None
        best_p = 0.0
        tied = False
        for c in sorted(eligible):
            mem = eligible[c]
            hits = sum(1 for u in g.adj[v] if u in mem)
            if hits == 0:
                continue
            p = hits / len(mem)
            if p > best_p:
                best_c, best_p, tied = c, p, False
            elif p == best_p:
                tied = True
        if best_c is None or tied:
            del assignment[v]
            unassigned.add(v)
        else:
            assignment[v] = best_c
    return Cover(assignment=assignment, unassigned=unassigned)


@dataclass
class ReducedGraph:
    """Weighted super-vertex graph obtained by contracting a cover.

    ``label_map`` maps super-vertex ids to the contracted community labels,
    ``member_map`` maps the input graph's node ids to super-vertex ids.
    """

    graph: Graph
    label_map: dict[int, int]
    member_map: dict[int, int]


def reduce_graph(g: Graph, cover: Cover) -> ReducedGraph:
    """Contract each community to a super-vertex.

    Intra-community weight becomes a self-loop of twice the internal edge
    weight (pre-existing self-loops carry over), inter-community weight
    becomes a cross edge; total weight is conserved.  Unassigned nodes are
    promoted to singleton communities first.  Super-vertices are ordered by
    the smallest member id of their community.
    """
    cover = cover.with_singletons()
    members = cover.communities()
    order = sorted(members, key=lambda c: min(members[c]))
    super_of_label = {c: i for i, c in enumerate(order)}
    node_super = {v: super_of_label[c] for v, c in cover.assignment.items()}

    k = len(order)
    self_loops = [0.0] * k
    cross: dict[tuple[int, int], float] = {}
    for v in range(g.n):
        self_loops[node_super[v]] += g.self_loop(v)
        for u, w in g.neighbors(v):
            if u < v:
                continue
            cu, cv = node_super[u], node_super[v]
            if cu == cv:
                self_loops[cu] += 2.0 * w
            else:
                key = (min(cu, cv), max(cu, cv))
                cross[key] = cross.get(key, 0.0) + w

    reduced = Graph.weighted(
        n=k,
        edges=[(u, v, w) for (u, v), w in cross.items()],
        self_loops=self_loops,
    )
    return ReducedGraph(
        graph=reduced,
        label_map={i: c for c, i in super_of_label.items()},
        member_map=node_super,
    )


def delta_modularity(g: Graph, partition: list[int], v: int, target: int) -> float:
    """Weighted-modularity gain of moving ``v`` into community ``target``.

    ``partition`` assigns a community label to every vertex of ``g``.  The
    value equals Q(after move) - Q(before move); moving to the current
    community is a no-op with gain 0.
    """
    current = partition[v]
    if target == current:
        return 0.0
    w2 = g.total_weight()
    if w2 == 0:
        return 0.0
    k_v = g.strength(v)
    tot_cur = sum(g.strength(u) for u in range(g.n) if partition[u] == current)
    tot_tgt = sum(g.strength(u) for u in range(g.n) if partition[u] == target)
    in_cur = 0.0
    in_tgt = 0.0
    for u, w in g.neighbors(v):
        if u == v:
            continue
        if partition[u] == current:
            in_cur += w
        elif partition[u] == target:
            in_tgt += w
    return 2.0 * (in_tgt - in_cur) / w2 - 2.0 * k_v * (tot_tgt - tot_cur + k_v) / (
        w2 * w2
    )


def _local_moves(g: Graph, initial: list[int] | None = None) -> list[int]:
    """One level of greedy moves starting from ``initial`` (default singletons).

    Sweeps vertices in ascending id; each vertex takes the neighbor community
    with the largest positive gain (ties: smallest community label).  Stops
    when a full sweep makes no move.
    """
    n = g.n
    partition = list(range(n)) if initial is None else list(initial)
    strength = [g.strength(v) for v in range(n)]
    tot: dict[int, float] = {}
    for v in range(n):
        tot[partition[v]] = tot.get(partition[v], 0.0) + strength[v]
    w2 = sum(strength)
    if w2 == 0:
        return partition

    moved = True
    while moved:
        moved = False
        for v in range(n):
            cur = partition[v]
            weight_to: dict[int, float] = {}
            for u, w in g.neighbors(v):
                if u != v:
                    weight_to[partition[u]] = weight_to.get(partition[u], 0.0) + w
            in_cur = weight_to.get(cur, 0.0)
            tot_cur_less = tot[cur] - strength[v]
            # Candidates in ascending label order, so the first maximal gain
            # seen is already the smallest-label tie winner.
            best_c, best_gain = cur, 0.0
            for c in sorted(weight_to):
                if c == cur:
                    continue
                gain = 2.0 * (weight_to[c] - in_cur) / w2 - 2.0 * strength[v] * (
                    tot[c] - tot_cur_less
                ) / (w2 * w2)
                if gain > best_gain + MOVE_TOLERANCE:
                    best_c, best_gain = c, gain
            if best_c != cur and best_gain > MOVE_TOLERANCE:
                partition[v] = best_c
                tot[cur] -= strength[v]
                tot[best_c] += strength[v]
                moved = True
    return partition


def refine_cover(g: Graph, cover: Cover) -> Cover:
    """Multilevel greedy modularity maximization seeded from ``cover``.

    Runs node-level move sweeps on ``g`` starting from the cover (unassigned
    nodes enter as singletons), then contracts the result and continues with
    super-vertex sweeps until no level improves.  Communities keep the label
    of their smallest original member's seed community.
    """
    base = cover.with_singletons()
    partition = _local_moves(g, [base.assignment[v] for v in range(g.n)])
    rg = reduce_graph(g, Cover(assignment=dict(enumerate(partition))))
    return maximize_modularity(rg)


def maximize_modularity(rg: ReducedGraph) -> Cover:
    """Multilevel greedy modularity maximization over a reduced graph.

    Runs local move sweeps, contracts the resulting partition, and repeats
    until a level makes no move.  Returns a cover over the original node ids
    that entered :func:`reduce_graph`, labeled by community label of the
    smallest original member.
    """
    node_super = dict(rg.member_map)  # original node -> current-level vertex
    level = rg.graph
    while True:
        partition = _local_moves(level)
        if all(partition[v] == v for v in range(level.n)):
            break
        level_cover = Cover(assignment=dict(enumerate(partition)))
        contracted = reduce_graph(level, level_cover)
        node_super = {v: contracted.member_map[s] for v, s in node_super.items()}
        level = contracted.graph

    # Label each final community by the traversal label of its smallest member.
    groups: dict[int, list[int]] = {}
    for v, s in node_super.items():
        groups.setdefault(s, []).append(v)
    assignment: dict[int, int] = {}
    for s, mem in groups.items():
        label = rg.label_map[rg.member_map[min(mem)]]
        for v in mem:
            assignment[v] = label
    return Cover(assignment=assignment)
