"""Cover quality measures and brute-force oracles used by the test suite."""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover
from .graph import Graph


def modularity(g: Graph, cover: Cover) -> float:
    """Newman modularity of a disjoint cover; 0 on graphs with no weight.

    On weighted graphs a self-loop contributes its full weight both to its
    community's internal weight and to its vertex strength, which makes
    modularity invariant under the contraction in
    :func:`commspread.refine.reduce_graph`.
    """
    if cover.unassigned:
        raise ValueError("modularity requires every node to carry a label")
    w2 = g.total_weight()
    if w2 == 0:
        return 0.0
    internal: dict[int, float] = {}
    volume: dict[int, float] = {}
    assign = cover.assignment
    for v in range(g.n):
        c = assign[v]
        volume[c] = volume.get(c, 0.0) + g.strength(v)
        internal[c] = internal.get(c, 0.0) + g.self_loop(v)
        for u, w in g.neighbors(v):
            if assign[u] == c:
                internal[c] = internal.get(c, 0.0) + w
    return sum(
        internal.get(c, 0.0) / w2 - (volume[c] / w2) ** 2 for c in volume
    )


def conductance_oracle(g: Graph, members: set[int]) -> float:
    """Set conductance by direct enumeration of the full edge set.

    Independent of any incremental cut bookkeeping; defined as 0 when the
    smaller side of the cut has volume 0.
    """
    cut = 0
    for u, v in g.edges():
        if (u in members) != (v in members):
            cut += 1
    volume = sum(g.degree(v) for v in members)
    denom = min(volume, 2 * g.m - volume)
    if denom <= 0:
        return 0.0
    return cut / denom


@dataclass
class CoverStats:
    community_count: int
    sizes: dict[int, int]
    min_size: int
    max_size: int
    mean_size: float
    modularity: float
    conductances: dict[int, float]


def cover_stats(g: Graph, cover: Cover) -> CoverStats:
    """Aggregate size and quality statistics for a cover."""
    members = cover.communities()
    sizes = {c: len(mem) for c, mem in members.items()}
    return CoverStats(
        community_count=len(members),
        sizes=sizes,
        min_size=min(sizes.values()),
        max_size=max(sizes.values()),
        mean_size=sum(sizes.values()) / len(sizes),
        modularity=modularity(g, cover),
        conductances={c: conductance_oracle(g, mem) for c, mem in members.items()},
    )
