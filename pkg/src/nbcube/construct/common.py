"""
Shared state and per-block routing helpers for the path builders.

A block host is the survival graph Q[b]⊖U_b of one subcube; routing inside
it forbids the vertices that are faulty only because of faults in the
neighboring blocks.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Union

from nbcube.cube import CubeSpec, SubcubePartition, cached_cube
from nbcube.exceptions import (
    ConstructionFailedError,
    FanInfeasibleError,
    InfeasibleError,
    PreconditionError,
)
from nbcube.graph_core import Graph, Path, disjoint_set_paths, fan
from nbcube.survival import FaultSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockHost:
    """Q[b]⊖U_b with local/global vertex maps"""

    block: int
    graph: Graph
    mapping: tuple[int, ...]
    index: dict[int, int]

    def local(self, vertices: Iterable[int]) -> list[int]:
        return [self.index[v] for v in vertices if v in self.index]

    def lift(self, path: Sequence[int]) -> Path:
        return tuple(self.mapping[v] for v in path)


class FaultContext:
    """A cube, a fault set and a subcube partition shared by one construction"""

    def __init__(
        self,
        spec: CubeSpec,
        faults: Union[FaultSet, Iterable[int]],
        d: int,
    ) -> None:
        self.spec = spec
        self.graph = cached_cube(spec)
        if isinstance(faults, FaultSet):
            self.faults = faults
        else:
            self.faults = FaultSet.of(self.graph, faults)
        self.partition = SubcubePartition.of(spec, d)
        self.counts = self.partition.fault_counts(self.faults)
        self._hosts: dict[int, BlockHost] = {}

    @property
    def fault_count(self) -> int:
        return self.faults.size

    def healthy(self, v: int) -> bool:
        return self.faults.is_healthy(v)

    def block_of(self, v: int) -> int:
        return self.partition.block_of(v)

    def outer(self, v: int, j: int) -> int:
        return self.partition.outer(v, j)

    def block_neighbors(self, v: int) -> list[int]:
        """Neighbors of ``v`` inside its own block, ascending"""
        block = self.block_of(v)
        return [w for w in self.graph.neighbors(v) if self.block_of(w) == block]

    def host(self, b: int) -> BlockHost:
        if b not in self._hosts:
            block = self.partition.blocks[b]
            block_faults = [u for u in self.faults.faults if self.block_of(u) == b]
            inner = {
                w
                for u in block_faults
                for w in (u, *self.graph.neighbors(u))
                if self.block_of(w) == b
            }
            graph, mapping = self.graph.induced_subgraph(
                v for v in block if v not in inner
            )
            index = {v: i for i, v in enumerate(mapping)}
            self._hosts[b] = BlockHost(b, graph, mapping, index)
        return self._hosts[b]

    def _forbidden(self, host: BlockHost, avoid: Iterable[int]) -> set[int]:
        faulty = {i for i, v in enumerate(host.mapping) if not self.healthy(v)}
        return faulty | set(host.local(avoid))

    def block_fan(
        self,
        b: int,
        apex: int,
        targets: Iterable[int],
        avoid: Iterable[int] = (),
    ) -> dict[int, Path]:
        """Fan from ``apex`` to ``targets`` through healthy vertices of Q[b]

        A target equal to the apex gets the single-vertex path.

        Returns:
            Mapping target -> path starting at ``apex``
        """
        host = self.host(b)
        target_set = set(targets)
        result: dict[int, Path] = {}
        if apex in target_set:
            result[apex] = (apex,)
            target_set.discard(apex)
        for v in target_set | {apex}:
            if v not in host.index or not self.healthy(v):
                raise ConstructionFailedError(
                    f"{self.spec.format_vertex(v)} is not a healthy vertex of Q[{b}]"
                )
        forbidden = self._forbidden(host, avoid) - set(host.local(target_set | {apex}))
        try:
            routed = fan(
                host.graph, host.index[apex], host.local(target_set), forbidden
            )
        except (FanInfeasibleError, PreconditionError) as error:
            raise ConstructionFailedError(
                f"no fan from {self.spec.format_vertex(apex)} to "
                f"{len(target_set)} target(s) in Q[{b}]: {error}"
            ) from error
        for path in routed.paths:
            lifted = host.lift(path)
            result[lifted[-1]] = lifted
        return result

    def block_route(
        self, b: int, start: int, end: int, avoid: Iterable[int] = ()
    ) -> Path:
        """A healthy (start, end)-path inside Q[b] avoiding ``avoid``"""
        if start == end:
            return (start,)
        return self.block_fan(b, start, [end], avoid)[end]

    def block_linkage(
        self, b: int, sources: Iterable[int], sinks: Iterable[int]
    ) -> dict[int, Path]:
        """Pairwise disjoint healthy paths in Q[b] from every source to some sink

        Returns:
            Mapping source -> path; a vertex that is both a source and a sink
            gets the single-vertex path
        """
        host = self.host(b)
        source_list = list(sources)
        sink_list = list(sinks)
        for v in source_list + sink_list:
            if v not in host.index or not self.healthy(v):
                raise ConstructionFailedError(
                    f"{self.spec.format_vertex(v)} is not a healthy vertex of Q[{b}]"
                )
        forbidden = self._forbidden(host, ())
        try:
            paths = disjoint_set_paths(
                host.graph,
                host.local(source_list),
                host.local(sink_list),
                forbidden,
                allow_shared=True,
            )
        except (InfeasibleError, PreconditionError) as error:
            raise ConstructionFailedError(
                f"no {len(source_list)}-linkage in Q[{b}]: {error}"
            ) from error
        return {host.mapping[path[0]]: host.lift(path) for path in paths}


@dataclass(frozen=True)
class Ring:
    """Blocks walked from ``origin`` in direction ``step`` (+1 or −1)"""

    k: int
    origin: int
    step: int

    def block(self, r: int) -> int:
        return (self.origin + r * self.step) % self.k

    def position(self, b: int) -> int:
        return ((b - self.origin) * self.step) % self.k


def reverse_paths(paths: Iterable[Path]) -> list[Path]:
    return [tuple(reversed(path)) for path in paths]


def lowest_differing_dimension(spec: CubeSpec, x: int, y: int) -> int:
    for d in range(spec.n):
        if spec.digit(x, d) != spec.digit(y, d):
            return d
    raise PreconditionError("endpoints coincide")
