"""Rips graphs at scale n over finite vertex sets in the word metric.

Vertices x != y are joined when d(x, y) < n -- strictly, so scale n
admits jumps of length at most n - 1.  Components come with a spanning
forest certificate whose edges are genuine graph edges, built by a
deterministic Kruskal pass over the sorted edge list; the component
representative is the canonically smallest vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, ModelMismatchError
from .groups import GroupElement

DEFAULT_VERTEX_CAP = 4096


@dataclass(frozen=True)
class RipsGraph:
    vertices: tuple[GroupElement, ...]  # canonically sorted, no duplicates
    scale: int
    edges: tuple[tuple[int, int], ...]  # index pairs i < j with 0 < d < scale


@dataclass(frozen=True)
class ComponentCertificate:
    """component_ids[i] is the index of the canonical representative of
    vertex i's component; forest lists parent edges (i, j), each an
    actual edge of the graph, spanning every component."""

    component_ids: tuple[int, ...]
    forest: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(set(self.component_ids))


def _prepare_vertices(vertices: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    seen = set()
    out = []
    for v in vertices:
        key = (v.free, v.ab)
        if key not in seen:
            seen.add(key)
            out.append(v)
    if not out:
        raise ValueError("empty vertex set")
    model = out[0].model
    for v in out[1:]:
        if v.model != model:
            raise ModelMismatchError("Rips vertices use different models")
    return tuple(sorted(out, key=GroupElement.sort_key))


def _distance_matrix(vertices: Sequence[GroupElement]) -> list[list[int]]:
    n = len(vertices)
    dist = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = vertices[i].distance(vertices[j])
            dist[i][j] = dist[j][i] = d
    return dist


def build_rips(
    vertices: Iterable[GroupElement],
    scale: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> RipsGraph:
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    verts = _prepare_vertices(vertices)
    if len(verts) > vertex_cap:
        raise CapExceededError("Rips vertex count", len(verts), vertex_cap)
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if 0 < verts[i].distance(verts[j]) < scale:
                edges.append((i, j))
    return RipsGraph(verts, scale, tuple(edges))


def components_from_edges(
    nvertices: int, edges: Iterable[tuple[int, int]]
) -> ComponentCertificate:
    """Union-find over an explicit edge list; shared with the Novikov
    support-graph checks."""
    parent = list(range(nvertices))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    forest = []
    for i, j in sorted(edges):
        ri, rj = find(i), find(j)
        if ri != rj:
            # the smaller index stays the representative
            parent[max(ri, rj)] = min(ri, rj)
            forest.append((i, j))
    ids = tuple(find(i) for i in range(nvertices))
    return ComponentCertificate(ids, tuple(forest))


def components(graph: RipsGraph) -> ComponentCertificate:
    return components_from_edges(len(graph.vertices), graph.edges)


@dataclass(frozen=True)
class ConnectivityProfile:
    """Component counts for scales 1..n_max and the first scale (if
    any) at which the graph is connected.  Counts are non-increasing in
    the scale because edge sets only grow."""

    scales: tuple[int, ...]
    counts: tuple[int, ...]
    threshold: int | None


def connectivity_profile(
    vertices: Iterable[GroupElement],
    n_max: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> ConnectivityProfile:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    verts = _prepare_vertices(vertices)
    if len(verts) > vertex_cap:
        raise CapExceededError("Rips vertex count", len(verts), vertex_cap)
    dist = _distance_matrix(verts)
    nv = len(verts)
    scales, counts = [], []
    threshold = None
    for n in range(1, n_max + 1):
        edges = [
            (i, j)
            for i in range(nv)
            for j in range(i + 1, nv)
            if 0 < dist[i][j] < n
        ]
        cert = components_from_edges(nv, edges)
        scales.append(n)
        counts.append(cert.count)
        if threshold is None and cert.count == 1:
            threshold = n
    return ConnectivityProfile(tuple(scales), tuple(counts), threshold)
