"""
Undirected simple graphs, connectivity and Menger path machinery.

Every disjoint-path computation runs a unit-capacity maximum flow on the
vertex-split network of the host graph (``v`` becomes ``v_in -> v_out`` with
capacity one) using :func:`scipy.sparse.csgraph.maximum_flow`. Flows are
decomposed into paths by repeatedly following the lowest-id arc that still
carries flow, so results are reproducible.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_flow

from nbcube.constants import Classification
from nbcube.exceptions import (
    FanInfeasibleError,
    InfeasibleError,
    NoPathError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

Path = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0 … vertex_count-1``

    ``adjacency[v]`` is the sorted tuple of neighbors of ``v``.
    """

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        count = len(self.adjacency)
        for v, row in enumerate(self.adjacency):
            if any(b <= a for a, b in zip(row, row[1:])):
                raise PreconditionError(f"adjacency of {v} is not strictly sorted")
            for w in row:
                if not 0 <= w < count:
                    raise PreconditionError(f"neighbor {w} of {v} is out of range")
                if w == v:
                    raise PreconditionError(f"self-loop at {v}")
        for v, row in enumerate(self.adjacency):
            for w in row:
                if v not in self.neighbor_sets[w]:
                    raise PreconditionError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list; duplicate edges collapse

        Raises:
            PreconditionError: On self-loops or out-of-range endpoints
        """
        if vertex_count < 0:
            raise PreconditionError(f"negative vertex count {vertex_count}")
        neighbors: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise PreconditionError(f"edge {u}-{v} leaves 0..{vertex_count - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(tuple(tuple(sorted(row)) for row in neighbors))

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.adjacency)

    @cached_property
    def degrees(self) -> npt.NDArray[np.int64]:
        return np.array([len(row) for row in self.adjacency], dtype=np.int64)

    @cached_property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order"""
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row if u < v]

    def regular_degree(self) -> Optional[int]:
        """Common degree of all vertices, or None if the graph is not regular"""
        if self.vertex_count == 0:
            return 0
        low, high = int(self.degrees.min()), int(self.degrees.max())
        return low if low == high else None

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise PreconditionError(
                f"vertex {v} is out of range 0..{self.vertex_count - 1}"
            )

    def open_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """N(S): every neighbor of a vertex of S (may intersect S)"""
        result: set[int] = set()
        for v in vertices:
            result.update(self.adjacency[v])
        return frozenset(result)

    def closed_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """N[S] = S ∪ N(S)"""
        members = frozenset(vertices)
        return members | self.open_neighborhood(members)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by ``vertices``

        Returns:
            Tuple of (subgraph, mapping) where ``mapping[i]`` is the vertex of
            this graph that became vertex ``i`` of the subgraph; mapping is
            sorted ascending
        """
        mapping = tuple(sorted(set(vertices)))
        for v in mapping:
            self.check_vertex(v)
        local = {v: i for i, v in enumerate(mapping)}
        adjacency = tuple(
            tuple(local[w] for w in self.adjacency[v] if w in local) for v in mapping
        )
        return Graph(adjacency), mapping

    def to_csr(self) -> csr_matrix:
        """Symmetric 0/1 adjacency matrix"""
        rows = np.repeat(np.arange(self.vertex_count), self.degrees)
        cols = np.fromiter(
            (w for row in self.adjacency for w in row),
            dtype=np.int64,
            count=int(self.degrees.sum()),
        )
        data = np.ones(len(cols), dtype=np.int32)
        return csr_matrix(
            (data, (rows, cols)), shape=(self.vertex_count, self.vertex_count)
        )

    def to_dense(self) -> npt.NDArray[np.bool_]:
        """Dense boolean adjacency matrix"""
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=np.bool_)
        for v, row in enumerate(self.adjacency):
            matrix[v, list(row)] = True
        return matrix


@dataclass(frozen=True)
class PathFamily:
    """Internally disjoint (source, target)-paths

    An empty family for distinct endpoints flags that no path exists.
    """

    source: int
    target: int
    paths: tuple[Path, ...]

    @property
    def no_path(self) -> bool:
        return len(self.paths) == 0

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class Fan:
    """Paths from ``apex`` to distinct targets sharing only ``apex``"""

    apex: int
    targets: frozenset[int]
    paths: tuple[Path, ...]


def is_path(g: Graph, path: Sequence[int]) -> bool:
    """Whether ``path`` is a non-empty simple path of ``g``"""
    if len(path) == 0 or len(set(path)) != len(path):
        return False
    if any(not 0 <= v < g.vertex_count for v in path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest member"""
    if g.vertex_count == 0:
        return []
    count, labels = connected_components(g.to_csr(), directed=False)
    groups: list[list[int]] = [[] for _ in range(count)]
    for v, label in enumerate(labels):
        groups[int(label)].append(v)
    return sorted((tuple(group) for group in groups), key=lambda group: group[0])


def is_complete(g: Graph) -> bool:
    count = g.vertex_count
    return count >= 1 and g.edge_count == count * (count - 1) // 2


def classify(g: Graph) -> Classification:
    """Empty, Complete, Disconnected or Other, tested in that order"""
    if g.vertex_count == 0:
        return Classification.EMPTY
    if is_complete(g):
        return Classification.COMPLETE
    if len(components(g)) >= 2:
        return Classification.DISCONNECTED
    return Classification.OTHER


def attach_apex(g: Graph, targets: Iterable[int]) -> tuple[Graph, int]:
    """Add a new vertex joined to every vertex of ``targets``

    Returns:
        Tuple of (extended graph, id of the new vertex)
    """
    apex = g.vertex_count
    joined = sorted(set(targets))
    for v in joined:
        g.check_vertex(v)
    joined_set = frozenset(joined)
    adjacency = tuple(
        row + (apex,) if v in joined_set else row for v, row in enumerate(g.adjacency)
    )
    return Graph(adjacency + (tuple(joined),)), apex


def _route(
    g: Graph,
    apex: int,
    sinks: Mapping[int, int],
    removed: frozenset[int] = frozenset(),
) -> list[Path]:
    """Maximum family of apex-to-sink paths sharing only the apex

    Vertices in ``sinks`` terminate paths (they are never passed through);
    ``sinks[v]`` is how many paths may end at ``v``. Vertices in ``removed``
    are deleted.
    """
    count = g.vertex_count
    terminal = 2 * count
    rows: list[int] = []
    cols: list[int] = []

    def arc(tail: int, head: int) -> None:
        rows.append(tail)
        cols.append(head)

    caps: list[int] = []
    for v in range(count):
        if v in removed or v == apex or v in sinks:
            continue
        arc(2 * v, 2 * v + 1)
        caps.append(1)
    for u in range(count):
        if u in removed or u in sinks:
            continue
        for w in g.adjacency[u]:
            if w in removed or w == apex:
                continue
            arc(2 * u + 1, 2 * w)
            caps.append(1)
    for v, capacity in sorted(sinks.items()):
        if v in removed or capacity <= 0:
            continue
        arc(2 * v, terminal)
        caps.append(capacity)

    network = csr_matrix(
        (np.array(caps, dtype=np.int32), (rows, cols)),
        shape=(terminal + 1, terminal + 1),
        dtype=np.int32,
    )
    network.sum_duplicates()
    network.sort_indices()
    result = maximum_flow(network, 2 * apex + 1, terminal, method="dinic")
    logger.debug(f"Max flow from {apex} to {len(sinks)} sink(s): {result.flow_value}")
    return _decompose(result.flow, 2 * apex + 1, terminal)


def _decompose(flow, source: int, terminal: int) -> list[Path]:
    """Split a unit-capacity flow into paths, lowest-id arc first"""
    flow = csr_matrix(flow)
    remaining: dict[int, dict[int, int]] = {}
    for node in range(flow.shape[0]):
        start, end = flow.indptr[node], flow.indptr[node + 1]
        arcs = {
            int(head): int(value)
            for head, value in zip(flow.indices[start:end], flow.data[start:end])
            if value > 0
        }
        if arcs:
            remaining[node] = arcs

    paths: list[Path] = []
    while remaining.get(source):
        node = source
        vertices = [source // 2]
        while node != terminal:
            arcs = remaining[node]
            head = min(arcs)
            arcs[head] -= 1
            if arcs[head] == 0:
                del arcs[head]
            if head != terminal and head % 2 == 0:
                vertices.append(head // 2)
            node = head
        paths.append(tuple(vertices))
    return paths


def disjoint_paths(
    g: Graph, x: int, y: int, forbidden: Iterable[int] = (), strict: bool = False
) -> PathFamily:
    """Maximum family of internally disjoint (x,y)-paths in ``g - forbidden``

    Args:
        g: Host graph
        x: Source vertex
        y: Target vertex
        forbidden: Vertices deleted before routing
        strict: Raise instead of returning an empty family

    Returns:
        PathFamily; it is empty (``no_path``) when x and y are separated

    Raises:
        PreconditionError: If x == y or an endpoint is forbidden
        NoPathError: If ``strict`` and x and y are separated
    """
    removed = frozenset(forbidden)
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise PreconditionError("disjoint_paths needs distinct endpoints")
    if x in removed or y in removed:
        raise PreconditionError("an endpoint is forbidden")
    paths = _route(g, x, {y: max(1, g.degree(y))}, removed)
    if not paths:
        logger.debug(f"No path between {x} and {y} avoiding {len(removed)} vertices")
        if strict:
            raise NoPathError(f"{x} and {y} are separated")
    return PathFamily(x, y, tuple(paths))


def local_connectivity(g: Graph, x: int, y: int) -> int:
    """Number of internally disjoint (x,y)-paths (Menger value of the pair)"""
    return len(disjoint_paths(g, x, y))


def vertex_connectivity(g: Graph) -> int:
    """κ(g), the least number of vertices whose removal disconnects or trivialises g

    A minimum-degree vertex ``v`` is fixed; the minimum of the local
    connectivities between ``v`` and its non-neighbors and between
    non-adjacent pairs of neighbors of ``v`` (capped by the degree of ``v``)
    is κ.
    """
    count = g.vertex_count
    if count <= 1:
        return 0
    if is_complete(g):
        return count - 1
    if len(components(g)) > 1:
        return 0
    v = int(np.argmin(g.degrees))
    best = g.degree(v)
    for w in range(count):
        if w == v or g.has_edge(v, w):
            continue
        best = min(best, local_connectivity(g, v, w))
    for a, b in combinations(g.neighbors(v), 2):
        if best == 0:
            break
        if not g.has_edge(a, b):
            best = min(best, local_connectivity(g, a, b))
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    return vertex_connectivity(g) >= k


def brute_force_connectivity(g: Graph) -> int:
    """κ(g) by enumerating vertex subsets in order of size (small graphs only)"""
    count = g.vertex_count
    for size in range(count):
        for removed in combinations(range(count), size):
            keep = sorted(set(range(count)) - set(removed))
            if len(keep) <= 1:
                return size
            sub, _ = g.induced_subgraph(keep)
            if len(components(sub)) > 1:
                return size
    return max(count - 1, 0)


def contains_k4(g: Graph) -> bool:
    """Whether four pairwise adjacent vertices exist"""
    for u, v in g.edges():
        common = sorted(w for w in g.neighbor_sets[u] & g.neighbor_sets[v] if w > v)
        for a, b in combinations(common, 2):
            if g.has_edge(a, b):
                return True
    return False


def fan(
    g: Graph,
    x: int,
    targets: Iterable[int],
    forbidden: Iterable[int] = (),
    *,
    verify: bool = False,
) -> Fan:
    """(x, Y)-fan in ``g - F``

    A sink vertex is joined to every vertex of F ∪ Y, |F|+|Y| internally
    disjoint paths from x to the sink are routed, and the paths ending in F
    are discarded. Should that leave fewer than |Y| paths (the connectivity
    assumption fails), the fan is routed directly in ``g - F``.

    Args:
        g: Host graph
        x: Apex
        targets: Target set Y
        forbidden: Vertex set F to avoid
        verify: Also check κ(g) >= |F| + |Y| (expensive)

    Returns:
        Fan with one path per target, ordered by target

    Raises:
        PreconditionError: If x ∈ Y ∪ F, Y ∩ F ≠ ∅, or verification fails
        FanInfeasibleError: If fewer than |Y| disjoint paths exist
    """
    target_set = frozenset(targets)
    forbidden_set = frozenset(forbidden)
    g.check_vertex(x)
    for v in target_set | forbidden_set:
        g.check_vertex(v)
    if x in target_set or x in forbidden_set:
        raise PreconditionError(f"apex {x} lies in the targets or the forbidden set")
    if target_set & forbidden_set:
        raise PreconditionError("targets and forbidden set intersect")
    if verify:
        kappa = vertex_connectivity(g)
        if kappa < len(forbidden_set) + len(target_set):
            raise PreconditionError(
                f"fan needs κ >= {len(forbidden_set) + len(target_set)}, got {kappa}"
            )
    if not target_set:
        return Fan(x, target_set, ())

    routed = _route(g, x, {v: 1 for v in forbidden_set | target_set})
    survivors = [path for path in routed if path[-1] in target_set]
    if len(survivors) < len(target_set):
        logger.debug(
            f"Fan from {x}: {len(survivors)}/{len(target_set)} paths via the "
            "auxiliary sink, routing in g - F instead"
        )
        survivors = _route(g, x, {v: 1 for v in target_set}, forbidden_set)
    if len(survivors) < len(target_set):
        raise FanInfeasibleError(
            f"only {len(survivors)} of {len(target_set)} fan paths from {x}"
        )
    return Fan(x, target_set, tuple(sorted(survivors, key=lambda path: path[-1])))


def disjoint_set_paths(
    g: Graph,
    sources: Iterable[int],
    sinks: Iterable[int],
    forbidden: Iterable[int] = (),
    *,
    allow_shared: bool = False,
) -> list[Path]:
    """|X| pairwise vertex-disjoint (X, Y)-paths in ``g - F``

    An apex joined to X is attached and an (apex, Y)-fan is routed; stripping
    the apex leaves the paths. The pairing of X with Y is whatever the flow
    produces.

    Args:
        g: Host graph
        sources: Set X
        sinks: Set Y with |Y| = |X|
        forbidden: Set F to avoid
        allow_shared: Accept X ∩ Y ≠ ∅; a shared vertex becomes a
            single-vertex path

    Returns:
        Paths ordered by their first vertex

    Raises:
        PreconditionError: On size mismatch, overlap with F, or (unless
            allowed) X ∩ Y ≠ ∅
        InfeasibleError: If fewer than |X| disjoint paths exist
    """
    source_set = frozenset(sources)
    sink_set = frozenset(sinks)
    forbidden_set = frozenset(forbidden)
    if len(source_set) != len(sink_set):
        raise PreconditionError(
            f"|X| = {len(source_set)} differs from |Y| = {len(sink_set)}"
        )
    if (source_set | sink_set) & forbidden_set:
        raise PreconditionError("X or Y meets the forbidden set")
    if source_set & sink_set and not allow_shared:
        raise PreconditionError("X and Y must be disjoint")
    if not source_set:
        return []
    extended, apex = attach_apex(g, source_set)
    try:
        routed = fan(extended, apex, sink_set, forbidden_set)
    except FanInfeasibleError as error:
        raise InfeasibleError(str(error)) from error
    return sorted(path[1:] for path in routed.paths)
