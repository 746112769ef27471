"""Nonstandard graphs ``*G = [G_n]`` computed exactly.

Sequences of graphs are described finitely (tabulated or by ultimately
periodic polynomial sizes), and every almost-everywhere statement is decided
by an explicit anchored ultrafilter trace.
"""

from .up_algebra import (
    AnchoredUltrafilter,
    Hypernatural,
    UPPSeq,
    UPSet,
)
from .graph_core import FiniteGraph
from .graph_families import (
    CompleteFamily,
    ConstantFamily,
    CycleFamily,
    ExplicitPeriodicFamily,
    InfinitePathFamily,
    PatchedFamily,
    PathFamily,
    StarFamily,
    VertexSelector,
)
from .nsg_core import NSVertex, ns_vertex
from .transfer_dsl import decide_ae, eval_on_graph, parse_sentence

__all__ = [
    "AnchoredUltrafilter",
    "Hypernatural",
    "UPPSeq",
    "UPSet",
    "FiniteGraph",
    "CompleteFamily",
    "ConstantFamily",
    "CycleFamily",
    "ExplicitPeriodicFamily",
    "InfinitePathFamily",
    "PatchedFamily",
    "PathFamily",
    "StarFamily",
    "VertexSelector",
    "NSVertex",
    "ns_vertex",
    "decide_ae",
    "eval_on_graph",
    "parse_sentence",
]
