"""
Disjoint healthy paths in survival graphs of k-ary n-cubes, k >= 3.

Endpoints in adjacent blocks reuse the adjacent-block construction and add
one detour through the next block when that construction is one short.
Endpoints in distant blocks are joined by chaining adjacent-block path
families along a ring of blocks, relinking inside every intermediate block.
"""

import logging
from collections.abc import Iterable
from typing import Union

from nbcube.construct.adjacent import adjacent_paths
from nbcube.construct.certificate import HealthyPathCertificate, theorem_bound
from nbcube.construct.common import (
    FaultContext,
    Ring,
    lowest_differing_dimension,
    reverse_paths,
)
from nbcube.cube import CubeSpec
from nbcube.exceptions import ConstructionFailedError, PreconditionError
from nbcube.graph_core import Path, disjoint_paths
from nbcube.survival import FaultSet, survival_subgraph

logger = logging.getLogger(__name__)


def _ring_walk(ctx: FaultContext, x: int, ring: Ring, first: int, last: int) -> Path:
    """Outer neighbors of ``x`` in ring blocks ``first`` down to ``last``"""
    return tuple(ctx.outer(x, ring.block(r)) for r in range(first, last - 1, -1))


def _crossing_index(ctx: FaultContext, path: Path) -> int:
    """Index of the last vertex of ``path`` lying in the block of its start"""
    home = ctx.block_of(path[0])
    index = 0
    while index + 1 < len(path) and ctx.block_of(path[index + 1]) == home:
        index += 1
    if index + 1 == len(path):
        raise ConstructionFailedError("path never leaves its starting block")
    return index


def _adjacent_case(ctx: FaultContext, x: int, y: int) -> list[Path]:
    a, b = ctx.block_of(x), ctx.block_of(y)
    if ctx.counts[a] < ctx.counts[b]:
        return reverse_paths(_adjacent_case(ctx, y, x))
    paths = adjacent_paths(ctx, x, y)
    if ctx.counts[a] + ctx.counts[b] < ctx.fault_count:
        return paths

    k = ctx.spec.k
    ring = Ring(k, a, 1 if (b - a) % k == 1 else -1)
    beyond = ring.block(2)
    route = ctx.block_route(beyond, ctx.outer(x, beyond), ctx.outer(y, beyond))
    detour = (x,) + _ring_walk(ctx, x, ring, k - 1, 3) + route + (y,)
    logger.debug(f"Detour through Q[{beyond}] of length {len(detour) - 1}")
    return paths + [detour]


def _chain(
    ctx: FaultContext, x: int, y: int, ring: Ring, t: int, m: int
) -> tuple[list[Path], dict[int, Path]]:
    """``m`` disjoint paths from ``x`` through ring blocks 0 … t−1 into block t

    Adjacent-block families are built between consecutive anchors (``x``,
    the least healthy vertex of each intermediate block, ``y``); their
    first-block prefixes, block-crossing edges and last-block suffixes are
    kept and relinked inside every intermediate block.

    Returns:
        Tuple of (paths from ``x`` ending at their entry vertex of block t,
        mapping entry vertex -> suffix from that entry to ``y``)
    """
    blocks = [ring.block(r) for r in range(t + 1)]
    anchors = [x]
    for b in blocks[1:t]:
        healthy = [v for v in ctx.partition.blocks[b] if ctx.healthy(v)]
        if not healthy:
            raise ConstructionFailedError(f"Q[{b}] has no healthy vertex")
        anchors.append(healthy[0])
    anchors.append(y)

    families: list[list[Path]] = []
    for i in range(t):
        family = adjacent_paths(ctx, anchors[i], anchors[i + 1])
        if len(family) < m:
            raise ConstructionFailedError(
                f"blocks {blocks[i]}->{blocks[i + 1]} gave {len(family)} path(s), "
                f"{m} needed"
            )
        families.append(family[:m])

    # exit vertex of block i -> entry vertex of block i+1
    crossings: list[dict[int, int]] = []
    for family in families:
        table = {}
        for path in family:
            cut = _crossing_index(ctx, path)
            table[path[cut]] = path[cut + 1]
        crossings.append(table)

    chains: list[list[int]] = []
    for path in families[0]:
        cut = _crossing_index(ctx, path)
        chains.append(list(path[: cut + 2]))

    for i in range(1, t):
        entries = [chain[-1] for chain in chains]
        links = ctx.block_linkage(blocks[i], entries, list(crossings[i]))
        for chain in chains:
            link = links[chain[-1]]
            chain.extend(link[1:])
            chain.append(crossings[i][link[-1]])

    suffixes = {}
    for path in families[t - 1]:
        cut = _crossing_index(ctx, path)
        suffixes[path[cut + 1]] = path[cut + 1 :]
    return [tuple(chain) for chain in chains], suffixes


def _triple_condition(counts: list[int], total: int) -> bool:
    return all(
        counts[i - 1] + counts[i] + counts[i + 1] < total
        for i in range(1, len(counts) - 1)
    )


def _distant_case(ctx: FaultContext, x: int, y: int) -> list[Path]:
    a, b = ctx.block_of(x), ctx.block_of(y)
    if ctx.counts[a] < ctx.counts[b]:
        return reverse_paths(_distant_case(ctx, y, x))
    spec = ctx.spec
    n, k, total = spec.n, spec.k, ctx.fault_count

    if ctx.counts[a] < total:
        options = []
        for step in (1, -1):
            ring = Ring(k, a, step)
            t = ring.position(b)
            counts = [ctx.counts[ring.block(r)] for r in range(t + 1)]
            options.append((_triple_condition(counts, total), ring, t, counts))
        # orientations meeting the triple condition first, forward before backward
        options.sort(key=lambda option: not option[0])
        failures = []
        m = 2 * n - 2 * total
        for _, ring, t, counts in options:
            if any(counts[i] + counts[i + 1] == total for i in range(t)):
                failures.append(f"ring step {ring.step} passes a saturated block pair")
                continue
            try:
                chains, suffixes = _chain(ctx, x, y, ring, t, m)
            except ConstructionFailedError as error:
                logger.debug(f"Ring step {ring.step} failed: {error}")
                failures.append(str(error))
                continue
            return [chain + suffixes[chain[-1]][1:] for chain in chains]
        raise ConstructionFailedError("; ".join(failures))

    # every fault lies in the block of x
    ring = Ring(k, a, 1)
    t = ring.position(b)
    m = 2 * n - 2 * total - 1
    chains, _ = _chain(ctx, x, y, ring, t, m)
    entries = [chain[-1] for chain in chains]
    far = ring.block(t + 1)
    pool = [
        v
        for v in ctx.partition.blocks[b]
        if v not in entries and ctx.healthy(v) and ctx.healthy(ctx.outer(v, far))
    ]
    if not pool:
        raise ConstructionFailedError(f"no spare healthy vertex in Q[{b}]")
    z = pool[0]
    fans = ctx.block_fan(b, y, entries + [z])
    paths = [chain + tuple(reversed(fans[chain[-1]]))[1:] for chain in chains]
    around = ctx.block_route(far, ctx.outer(x, far), ctx.outer(z, far))
    paths.append(
        (x,) + _ring_walk(ctx, x, ring, k - 1, t + 2) + around + tuple(reversed(fans[z]))
    )
    return paths


def kary_survival_paths(
    spec: CubeSpec, faults: Union[FaultSet, Iterable[int]], x: int, y: int
) -> HealthyPathCertificate:
    """At least 2n − 2ℓ internally disjoint healthy (x,y)-paths of Q_n^k⊖U

    Args:
        spec: Cube parameters with k >= 3 and n >= 2
        faults: Fault set with ℓ < n
        x: Healthy endpoint
        y: Healthy endpoint, distinct from ``x``

    Returns:
        Certificate whose bound is 2n − 2ℓ

    Raises:
        PreconditionError: On violated preconditions, including ℓ >= n
            where the bound is zero
        ConstructionFailedError: If the construction falls short
    """
    if spec.k < 3 or spec.n < 2:
        raise PreconditionError(f"k-ary paths need n >= 2 and k >= 3, got {spec}")
    spec.check_vertex(x)
    spec.check_vertex(y)
    if x == y:
        raise PreconditionError("endpoints must differ")
    ctx = FaultContext(spec, faults, lowest_differing_dimension(spec, x, y))
    if not (ctx.healthy(x) and ctx.healthy(y)):
        raise PreconditionError("both endpoints must be healthy")
    total = ctx.fault_count
    if total >= spec.n:
        raise PreconditionError(
            f"bound is zero for {total} fault(s) in {spec}, nothing to build"
        )
    bound = theorem_bound(spec, total)

    if total == 0:
        paths = list(disjoint_paths(ctx.graph, x, y).paths)
    elif spec.n == 2:
        survivor, mapping = survival_subgraph(ctx.graph, ctx.faults)
        index = {v: i for i, v in enumerate(mapping)}
        family = disjoint_paths(survivor, index[x], index[y])
        paths = [tuple(mapping[v] for v in path) for path in family.paths]
    else:
        a, b = ctx.block_of(x), ctx.block_of(y)
        if ctx.partition.adjacent(a, b):
            paths = _adjacent_case(ctx, x, y)
        else:
            paths = _distant_case(ctx, x, y)

    if len(paths) < bound:
        raise ConstructionFailedError(f"built {len(paths)} path(s), {bound} required")
    logger.debug(f"{len(paths)} path(s) between {x} and {y} with {total} fault(s)")
    return HealthyPathCertificate(
        spec, ctx.faults.sorted_faults, x, y, bound, tuple(sorted(paths))
    )
