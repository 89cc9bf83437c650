"""
Line-oriented multiplex format:

    # comment
    node <layer> <actor>
    edge <layer> <actor> <actor>

`node` lines declare presence without edges (degree-0 nodes matter for
domination). Line order is irrelevant. Also reads multinet `.mpx` files.
"""

import logging
from typing import List

from ..errors import NetworkFormatError
from ..network.core import MultilayerNetwork, MultilayerNetworkBuilder

logger = logging.getLogger(__name__)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def load_multiplex(text: str) -> MultilayerNetwork:
    builder = MultilayerNetworkBuilder()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        directive = parts[0].lower()
        if directive == "node":
            if len(parts) != 3:
                raise NetworkFormatError("expected 'node <layer> <actor>'", line_no)
            builder.add_node(parts[1], parts[2])
        elif directive == "edge":
            if len(parts) != 4:
                raise NetworkFormatError(
                    "expected 'edge <layer> <actor> <actor>'", line_no
                )
            if parts[2] == parts[3]:
                raise NetworkFormatError(f"self-loop on actor {parts[2]!r}", line_no)
            builder.add_edge(parts[1], parts[2], parts[3])
        else:
            raise NetworkFormatError(f"unknown directive {parts[0]!r}", line_no)
    net = builder.build()
    logger.debug(
        "multiplex.loaded actors=%d layers=%d edges=%d",
        net.n_actors,
        len(net.layers),
        net.n_edges(),
    )
    return net


def dump_multiplex(net: MultilayerNetwork) -> str:
    """Serializes edges, plus `node` lines only for degree-0 presences."""
    lines: List[str] = []
    for layer in net.layers:
        graph = net.graph(layer)
        for actor in sorted(graph.nodes):
            if not graph.adj[actor]:
                lines.append(f"node {layer} {actor}")
        for u, v in sorted(tuple(sorted(e)) for e in graph.edges):
            lines.append(f"edge {layer} {u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_mpx(text: str) -> MultilayerNetwork:
    """Reads multinet `#TYPE multiplex` files; attributes are ignored."""
    builder = MultilayerNetworkBuilder()
    section = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("--"):
            continue
        if line.startswith("#"):
            head = line[1:].split(None, 1)
            section = head[0].upper() if head else None
            if section == "TYPE" and len(head) > 1 and head[1].strip().lower() != "multiplex":
                raise NetworkFormatError(f"unsupported network type {head[1]!r}", line_no)
            continue
        fields = [f.strip() for f in line.split(",")]
        if section == "LAYERS":
            # name,DIRECTED|UNDIRECTED
            if len(fields) >= 2 and fields[1].upper() == "DIRECTED":
                raise NetworkFormatError(f"directed layer {fields[0]!r}", line_no)
            builder.add_layer(fields[0])
        elif section == "VERTICES":
            if len(fields) < 2:
                raise NetworkFormatError("expected 'actor,layer'", line_no)
            builder.add_node(fields[1], fields[0])
        elif section in ("EDGES", None):
            if len(fields) < 3:
                raise NetworkFormatError("expected 'actor,actor,layer'", line_no)
            if fields[0] == fields[1]:
                raise NetworkFormatError(f"self-loop on actor {fields[0]!r}", line_no)
            builder.add_edge(fields[2], fields[0], fields[1])
        # ACTORS and attribute sections carry nothing we keep
    return builder.build()


def read_network(path: str, fmt: str | None = None) -> MultilayerNetwork:
    fmt = fmt or ("mpx" if path.endswith(".mpx") else "multiplex")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    if fmt == "mpx":
        return load_mpx(text)
    if fmt == "multiplex":
        return load_multiplex(text)
    raise NetworkFormatError(f"unknown network format {fmt!r}")
