"""End-to-end detection pipeline: traverse, allocate brokers, refine."""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover, finalize
from .graph import Graph
from .refine import initial_cover, post_process, refine_cover
from .traversal import RunConfig, TraversalResult, run_traversal


@dataclass
class DetectionResult:
    cover: Cover
    traversal: TraversalResult
    initial: Cover


def detect(g: Graph, cfg: RunConfig) -> DetectionResult:
    """Run the full pipeline and return the finalized cover.

    With ``cfg.run_modmax`` disabled the post-processed cover is returned
    directly (unassigned brokers become singleton communities).
    """
    traversal = run_traversal(g, cfg)
    if g.n == 0:
        empty = Cover(assignment={})
        return DetectionResult(cover=empty, traversal=traversal, initial=empty)
    initial = initial_cover(traversal)
    allocated = post_process(g, initial, traversal.node_type)
    if cfg.run_modmax:
        cover = refine_cover(g, allocated)
    else:
        cover = allocated.with_singletons()
    return DetectionResult(cover=finalize(cover), traversal=traversal, initial=initial)
