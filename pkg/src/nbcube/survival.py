"""
Survival subgraphs and neighbor connectivity.

A fault set U subverts its closed neighborhood N[U]; the survival subgraph
G⊖U is induced by the remaining healthy vertices. The neighbor connectivity
κ_NB(G) is the least |U| for which G⊖U is empty, complete or disconnected.
"""

import logging
import math
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Optional, Union

import numpy as np
import numpy.typing as npt
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from nbcube.constants import (
    CHUNKS_PER_WORKER,
    DEFAULT_BUDGET,
    DEFAULT_WORKERS,
    Classification,
    Symmetry,
)
from nbcube.exceptions import BudgetExhaustedError, PreconditionError
from nbcube.graph_core import Graph, classify, vertex_connectivity
from nbcube.utils import ceil_half

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaultSet:
    """Fault set U of a host graph with its closed neighborhood N[U]"""

    faults: frozenset[int]
    closed_neighborhood: frozenset[int]
    vertex_count: int

    @classmethod
    def of(cls, g: Graph, faults: Iterable[int]) -> "FaultSet":
        """Fault set of ``g``

        Raises:
            PreconditionError: If a vertex is out of range
        """
        members = frozenset(int(v) for v in faults)
        for v in members:
            g.check_vertex(v)
        return cls(members, g.closed_neighborhood(members), g.vertex_count)

    @property
    def size(self) -> int:
        return len(self.faults)

    @property
    def sorted_faults(self) -> tuple[int, ...]:
        return tuple(sorted(self.faults))

    def is_faulty(self, v: int) -> bool:
        return v in self.closed_neighborhood

    def is_healthy(self, v: int) -> bool:
        return 0 <= v < self.vertex_count and v not in self.closed_neighborhood

    def healthy(self) -> tuple[int, ...]:
        """Healthy vertices V ∖ N[U], ascending"""
        return tuple(
            v for v in range(self.vertex_count) if v not in self.closed_neighborhood
        )


def _as_fault_set(g: Graph, faults: Union[FaultSet, Iterable[int]]) -> FaultSet:
    if isinstance(faults, FaultSet):
        if faults.vertex_count != g.vertex_count:
            raise PreconditionError(
                f"fault set built for {faults.vertex_count} vertices, "
                f"graph has {g.vertex_count}"
            )
        return faults
    return FaultSet.of(g, faults)


def survival_subgraph(
    g: Graph, faults: Union[FaultSet, Iterable[int]]
) -> tuple[Graph, tuple[int, ...]]:
    """G⊖U

    Returns:
        Tuple of (survival graph, mapping); ``mapping[i]`` is the vertex of
        ``g`` that became vertex ``i``, i.e. the sorted healthy vertices
    """
    fault_set = _as_fault_set(g, faults)
    return g.induced_subgraph(fault_set.healthy())


@dataclass(frozen=True)
class NbcResult:
    """Outcome of the exact neighbor-connectivity search"""

    value: int
    witness: FaultSet
    classification: Classification


def _classify_healthy(
    adjacency: npt.NDArray[np.bool_], healthy: npt.NDArray[np.bool_]
) -> Classification:
    count = int(healthy.sum())
    if count == 0:
        return Classification.EMPTY
    sub = adjacency[np.ix_(healthy, healthy)]
    if int(sub.sum()) == count * (count - 1):
        return Classification.COMPLETE
    pieces, _ = connected_components(csr_matrix(sub), directed=False)
    if pieces >= 2:
        return Classification.DISCONNECTED
    return Classification.OTHER


def _subsets(count: int, size: int, transitive: bool) -> Iterator[tuple[int, ...]]:
    """Size-``size`` vertex subsets in lexicographic order

    With ``transitive`` set, only subsets containing vertex 0 are produced.
    """
    if transitive and size >= 1:
        return ((0,) + rest for rest in combinations(range(1, count), size - 1))
    return combinations(range(count), size)


def _subset_total(count: int, size: int, transitive: bool) -> int:
    if transitive and size >= 1:
        return math.comb(count - 1, size - 1) if count >= 1 else 0
    return math.comb(count, size)


def _scan_chunk(
    adjacency: npt.NDArray[np.bool_],
    size: int,
    transitive: bool,
    start: int,
    stop: int,
) -> Optional[tuple[tuple[int, ...], Classification]]:
    """First qualifying subset among positions ``start … stop-1`` of the layer"""
    closed = adjacency.copy()
    np.fill_diagonal(closed, True)
    count = adjacency.shape[0]
    for subset in islice(_subsets(count, size, transitive), start, stop):
        if subset:
            healthy = ~closed[list(subset)].any(axis=0)
        else:
            healthy = np.ones(count, dtype=np.bool_)
        kind = _classify_healthy(adjacency, healthy)
        if kind.qualifies:
            return subset, kind
    return None


def _chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    step = max(1, math.ceil(total / chunks))
    return [(start, min(start + step, total)) for start in range(0, total, step)]


def _scan_layer(
    adjacency: npt.NDArray[np.bool_],
    size: int,
    transitive: bool,
    workers: int,
    executor: Optional[ProcessPoolExecutor],
) -> Optional[tuple[tuple[int, ...], Classification]]:
    count = adjacency.shape[0]
    total = _subset_total(count, size, transitive)
    if executor is None or total < 2 * workers:
        return _scan_chunk(adjacency, size, transitive, 0, total)
    bounds = _chunk_bounds(total, workers * CHUNKS_PER_WORKER)
    futures = [
        executor.submit(_scan_chunk, adjacency, size, transitive, start, stop)
        for start, stop in bounds
    ]
    # Chunks are contiguous and ordered, so the first chunk with a hit holds
    # the lexicographically least witness of the layer.
    for future in futures:
        hit = future.result()
        if hit is not None:
            for other in futures:
                other.cancel()
            return hit
    return None


def neighbor_connectivity_exact(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    symmetry: Symmetry = Symmetry.NONE,
    workers: int = DEFAULT_WORKERS,
) -> NbcResult:
    """κ_NB(g) by layered subset search

    Sizes ℓ = 0, 1, … up to ``budget`` are tried in turn; within a layer
    subsets are enumerated lexicographically and the first qualifying one is
    the witness.

    Args:
        g: Host graph
        budget: Largest fault-set size to try
        symmetry: ``VERTEX_TRANSITIVE`` restricts layers ℓ >= 1 to subsets
            containing vertex 0; only valid for vertex-transitive graphs
        workers: Number of processes; 1 scans in-process

    Returns:
        NbcResult with the least value and its witness

    Raises:
        PreconditionError: If budget < 0 or workers < 1
        BudgetExhaustedError: If κ_NB(g) > budget
    """
    if budget < 0:
        raise PreconditionError(f"budget must be non-negative, got {budget}")
    if workers < 1:
        raise PreconditionError(f"worker count must be at least 1, got {workers}")
    adjacency = g.to_dense()
    transitive = symmetry is Symmetry.VERTEX_TRANSITIVE
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for size in range(min(budget, g.vertex_count) + 1):
            logger.debug(
                f"Scanning {_subset_total(g.vertex_count, size, transitive)} "
                f"subset(s) of size {size}"
            )
            hit = _scan_layer(adjacency, size, transitive, workers, executor)
            if hit is not None:
                subset, kind = hit
                logger.info(f"κ_NB = {size} with witness {subset} ({kind.value})")
                return NbcResult(size, FaultSet.of(g, subset), kind)
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    raise BudgetExhaustedError(budget)


def neighbor_connectivity_unpruned(g: Graph, budget: int = DEFAULT_BUDGET) -> NbcResult:
    """Search without any symmetry assumption"""
    return neighbor_connectivity_exact(g, budget, Symmetry.NONE, 1)


def kappa_nb_formula(n: int, k: int) -> int:
    """κ_NB of the k-ary n-cube in closed form

    Raises:
        PreconditionError: If n < 1 or k < 2
    """
    if n < 1 or k < 2:
        raise PreconditionError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    if n == 1 and k <= 3:
        return 0
    if n == 1 and k >= 6:
        return 2
    if k == 2:
        return ceil_half(n)
    return n


def kappa_nb_corollary(n: int, k: int) -> int:
    """The same value written as ⌈δ/2⌉ with the cycle and complete exceptions"""
    if n < 1 or k < 2:
        raise PreconditionError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    delta = n if k == 2 else 2 * n
    if n == 1 and k <= 3:
        return 0
    if n == 1 and k >= 6:
        return delta // 2 + 1
    return ceil_half(delta)


def kappa_nb_cycle(length: int) -> int:
    """κ_NB(C_n): 0 for n = 3, 1 for n ∈ {4, 5}, 2 from 6 on"""
    if length < 3:
        raise PreconditionError(f"cycles have at least 3 vertices, got {length}")
    if length == 3:
        return 0
    if length <= 5:
        return 1
    return 2


def kappa_nb_complete(order: int) -> int:
    """κ_NB(K_n) = 0"""
    if order < 1:
        raise PreconditionError(f"complete graphs have at least 1 vertex, got {order}")
    return 0


def survival_size_floor(n: int, k: int, fault_count: int) -> int:
    """Lower bound k^n − (δ+1)ℓ on the number of healthy vertices"""
    delta = n if k == 2 else 2 * n
    return k**n - (delta + 1) * fault_count


def theorem_bound(n: int, k: int, fault_count: int) -> int:
    """Connectivity floor of a cube survival graph: n−2ℓ (k=2) or 2n−2ℓ, at least 0"""
    if k == 2:
        return max(n - 2 * fault_count, 0)
    return max(2 * n - 2 * fault_count, 0)


@dataclass(frozen=True)
class BoundReport:
    """Actual connectivity of a survival graph against its floor"""

    faults: tuple[int, ...]
    actual: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.actual >= self.bound


def lower_bound_check(
    g: Graph, faults: Union[FaultSet, Iterable[int]], n: int, k: int
) -> BoundReport:
    """Compare κ(G⊖U) with the connectivity floor for |U| faults

    Raises:
        PreconditionError: If |U| lies outside the admissible range
            (ℓ <= ⌈n/2⌉ for k = 2, ℓ <= n for k >= 3)
    """
    fault_set = _as_fault_set(g, faults)
    limit = ceil_half(n) if k == 2 else n
    if fault_set.size > limit:
        raise PreconditionError(
            f"{fault_set.size} faults exceed the admissible {limit} for n={n}, k={k}"
        )
    survivor, _ = survival_subgraph(g, fault_set)
    actual = vertex_connectivity(survivor)
    bound = theorem_bound(n, k, fault_set.size)
    if actual < bound:
        logger.warning(
            f"κ(G⊖U) = {actual} below {bound} for U = {fault_set.sorted_faults}"
        )
    return BoundReport(fault_set.sorted_faults, actual, bound)


def lower_bound_sweep(
    g: Graph, n: int, k: int, max_faults: Optional[int] = None
) -> list[BoundReport]:
    """:func:`lower_bound_check` over every fault set containing vertex 0

    Sizes run from 1 while ℓ < n/2 (k = 2) or ℓ < n (k >= 3), capped by
    ``max_faults``.
    """
    sizes = [
        size
        for size in range(1, n + 1)
        if (2 * size < n if k == 2 else size < n)
        and (max_faults is None or size <= max_faults)
    ]
    reports = []
    for size in sizes:
        for subset in _subsets(g.vertex_count, size, True):
            reports.append(lower_bound_check(g, subset, n, k))
    logger.info(
        f"Checked {len(reports)} fault set(s), "
        f"{sum(not report.passed for report in reports)} failure(s)"
    )
    return reports


@dataclass(frozen=True)
class InequalityReport:
    """κ_NB(G) against κ(G)"""

    nbc: int
    kappa: int

    @property
    def passed(self) -> bool:
        return self.nbc <= self.kappa


def nbc_le_kappa_check(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    symmetry: Symmetry = Symmetry.NONE,
) -> InequalityReport:
    """κ_NB(g) <= κ(g)

    Raises:
        BudgetExhaustedError: Propagated from the search
    """
    result = neighbor_connectivity_exact(g, budget, symmetry)
    return InequalityReport(result.value, vertex_connectivity(g))


def classify_survival(g: Graph, faults: Union[FaultSet, Iterable[int]]) -> Classification:
    """Classification of G⊖U"""
    survivor, _ = survival_subgraph(g, faults)
    return classify(survivor)
