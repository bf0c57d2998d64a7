"""
Internally disjoint healthy paths between vertices of two adjacent subcubes.
"""

import logging
from collections.abc import Iterable
from typing import Union

from nbcube.construct.certificate import HealthyPathCertificate
from nbcube.construct.common import FaultContext, Ring, reverse_paths
from nbcube.cube import CubeSpec, SubcubePartition
from nbcube.exceptions import ConstructionFailedError, PreconditionError
from nbcube.graph_core import Path, vertex_connectivity
from nbcube.survival import FaultSet

logger = logging.getLogger(__name__)


def lemma4_bound(n: int, fault_count: int, u: int, u_other: int) -> int:
    """Paths guaranteed between adjacent subcubes holding ``u`` and ``u_other`` faults

    2n − 2ℓ when u + u' < ℓ, and 2n − 2ℓ − 1 when u + u' = ℓ.

    Raises:
        PreconditionError: Unless n >= 3, 0 < ℓ < n and u + u' <= ℓ
    """
    if n < 3:
        raise PreconditionError(f"need n >= 3, got {n}")
    if not 0 < fault_count < n:
        raise PreconditionError(f"need 0 < ℓ < {n}, got ℓ={fault_count}")
    if u < 0 or u_other < 0 or u + u_other > fault_count:
        raise PreconditionError(
            f"block fault counts {u}, {u_other} inconsistent with ℓ={fault_count}"
        )
    if u + u_other < fault_count:
        return 2 * n - 2 * fault_count
    return 2 * n - 2 * fault_count - 1


def adjacent_paths(
    ctx: FaultContext, x: int, y: int, *, allow_swap: bool = True
) -> list[Path]:
    """(x,y)-paths through healthy vertices of the two adjacent blocks of x and y

    Paths are returned from ``x`` to ``y``, sorted.
    """
    a, b = ctx.block_of(x), ctx.block_of(y)
    if not ctx.partition.adjacent(a, b):
        raise PreconditionError(f"blocks {a} and {b} are not adjacent")
    if ctx.counts[a] < ctx.counts[b]:
        return sorted(reverse_paths(adjacent_paths(ctx, y, x, allow_swap=allow_swap)))

    spec = ctx.spec
    n, k = spec.n, spec.k
    ring = Ring(k, a, 1 if (b - a) % k == 1 else -1)
    u0, u1 = ctx.counts[a], ctx.counts[b]
    total = ctx.fault_count
    h = 2 * n - 2 - u0 - u1 - total

    candidates = [
        v
        for v in ctx.block_neighbors(x)
        if ctx.healthy(v) and ctx.healthy(ctx.outer(v, b))
    ]
    if len(candidates) < h:
        raise ConstructionFailedError(
            f"{spec.format_vertex(x)} has {len(candidates)} healthy neighbor pairs, "
            f"{h} needed"
        )
    chosen = candidates[: max(h, 0)]
    images = {v: ctx.outer(v, b) for v in chosen}
    x_out = ctx.outer(x, b)
    logger.debug(
        f"Adjacent blocks {a}->{b}: u0={u0}, u1={u1}, h={h}, x={spec.format_vertex(x)}"
    )

    def through(v: int, tail: Path) -> Path:
        return (x, v) + tuple(reversed(tail))

    if u0 == total == n - 1:
        return [(x,) + ctx.block_route(b, x_out, y)]

    if u0 >= 1:
        if ctx.healthy(x_out):
            z, head = x, (x,)
        else:
            pool = sorted(
                v
                for v in ctx.partition.blocks[a]
                if v not in images
                and ctx.healthy(v)
                and ctx.healthy(ctx.outer(v, b))
            )
            if not pool:
                raise ConstructionFailedError("no healthy detour vertex z")
            z = pool[0]
            head = ctx.block_route(a, x, z, avoid=chosen)
        z_out = ctx.outer(z, b)
        fans = ctx.block_fan(b, y, list(images.values()) + [z_out])
        paths = [through(v, fans[images[v]]) for v in chosen]
        paths.append(head + tuple(reversed(fans[z_out])))
        return sorted(paths)

    # no fault in either block
    if total >= 2:
        fans = ctx.block_fan(b, y, images.values())
        return sorted(through(v, fans[images[v]]) for v in chosen)

    if k >= 4:
        if ctx.counts[ring.block(2)] > 0:
            if not allow_swap:
                raise ConstructionFailedError("fault next to both endpoint blocks")
            return sorted(reverse_paths(adjacent_paths(ctx, y, x, allow_swap=False)))
        fans = ctx.block_fan(b, y, list(images.values()) + [x_out])
        paths = [through(v, fans[images[v]]) for v in chosen]
        paths.append((x,) + tuple(reversed(fans[x_out])))
        return sorted(paths)

    # k = 3 with one fault in the third block
    if y == x_out:
        fans = ctx.block_fan(b, y, images.values())
        paths = [through(v, fans[images[v]]) for v in chosen]
        paths.append((x, y))
        return sorted(paths)
    y_in = ctx.outer(y, a)
    last = y_in if y_in in images else chosen[-1]
    kept = [v for v in chosen if v != last]
    head = ctx.block_route(a, x, y_in, avoid=kept)
    fans = ctx.block_fan(b, y, [images[v] for v in kept] + [x_out])
    paths = [through(v, fans[images[v]]) for v in kept]
    paths.append((x,) + tuple(reversed(fans[x_out])))
    paths.append(head + (y,))
    return sorted(paths)


def adjacent_subcube_paths(
    spec: CubeSpec,
    faults: Union[FaultSet, Iterable[int]],
    partition: SubcubePartition,
    j: int,
    j_other: int,
    x: int,
    y: int,
    verify: bool = False,
) -> HealthyPathCertificate:
    """Certificate of internally disjoint healthy (x,y)-paths inside Q[j] ∪ Q[j']

    Args:
        spec: Cube parameters (n, k >= 3)
        faults: Fault set with 0 < ℓ < n
        partition: Subcube partition the blocks refer to
        j: Block of ``x``
        j_other: Block of ``y``, adjacent to ``j``
        x: Healthy vertex of Q[j]
        y: Healthy vertex of Q[j']
        verify: Also check κ(Q[i]⊖U_i) >= 2n − 2 − 2u_i for both blocks

    Returns:
        Certificate whose bound is :func:`lemma4_bound` of the instance

    Raises:
        PreconditionError: On violated preconditions
        ConstructionFailedError: If fewer paths than the bound were built
    """
    if spec.n < 3 or spec.k < 3:
        raise PreconditionError(f"adjacent subcube paths need n, k >= 3, got {spec}")
    if partition.spec != spec:
        raise PreconditionError("partition belongs to another cube")
    ctx = FaultContext(spec, faults, partition.d)
    if not partition.adjacent(j, j_other):
        raise PreconditionError(f"blocks {j} and {j_other} are not adjacent")
    for name, v, block in (("x", x, j), ("y", y, j_other)):
        spec.check_vertex(v)
        if ctx.block_of(v) != block or not ctx.healthy(v):
            raise PreconditionError(f"{name} is not a healthy vertex of Q[{block}]")
    bound = lemma4_bound(spec.n, ctx.fault_count, ctx.counts[j], ctx.counts[j_other])

    if verify:
        for block in (j, j_other):
            floor = 2 * spec.n - 2 - 2 * ctx.counts[block]
            kappa = vertex_connectivity(ctx.host(block).graph)
            if kappa < floor:
                raise PreconditionError(
                    f"κ(Q[{block}]⊖U) = {kappa} below {floor}"
                )

    paths = adjacent_paths(ctx, x, y)
    if len(paths) < bound:
        raise ConstructionFailedError(f"built {len(paths)} path(s), {bound} required")
    return HealthyPathCertificate(
        spec, ctx.faults.sorted_faults, x, y, bound, tuple(paths)
    )
