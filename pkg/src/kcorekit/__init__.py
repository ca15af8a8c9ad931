"""k-core decomposition and analysis of Internet-like topologies."""

__version__ = "0.1.0"

from .graph import Graph, GraphSummary, build_graph, giant_component, summarize  # noqa: E402
from .kcore import (  # noqa: E402
    ShellCluster,
    ShellDecomposition,
    brute_force_decompose,
    core_subgraph,
    decompose,
    fit_shell_powerlaw,
    shell_clusters,
    shell_sizes,
)

__all__ = [
    "Graph", "GraphSummary", "build_graph", "giant_component", "summarize",
    "ShellCluster", "ShellDecomposition", "brute_force_decompose", "core_subgraph",
    "decompose", "fit_shell_powerlaw", "shell_clusters", "shell_sizes",
]
