"""
Disjoint healthy paths in hypercube survival graphs.
"""

import logging
from collections.abc import Iterable
from typing import Union

from nbcube.construct.certificate import HealthyPathCertificate, theorem_bound
from nbcube.construct.common import (
    FaultContext,
    lowest_differing_dimension,
    reverse_paths,
)
from nbcube.cube import CubeSpec
from nbcube.exceptions import ConstructionFailedError, PreconditionError
from nbcube.graph_core import Path, disjoint_paths
from nbcube.survival import FaultSet

logger = logging.getLogger(__name__)


def _split_paths(ctx: FaultContext, x: int, y: int) -> list[Path]:
    a, b = ctx.block_of(x), ctx.block_of(y)
    if ctx.counts[a] < ctx.counts[b]:
        return reverse_paths(_split_paths(ctx, y, x))

    spec = ctx.spec
    wanted = spec.n - 2 * ctx.fault_count
    x_out = ctx.outer(x, b)
    candidates = [
        v
        for v in ctx.block_neighbors(x)
        if ctx.healthy(v) and ctx.healthy(ctx.outer(v, b))
    ]
    through_outer = ctx.healthy(x_out)
    needed = wanted - 1 if through_outer else wanted
    if len(candidates) < needed:
        raise ConstructionFailedError(
            f"{spec.format_vertex(x)} has {len(candidates)} usable neighbors, "
            f"{needed} needed"
        )
    chosen = candidates[:needed]
    images = {v: ctx.outer(v, b) for v in chosen}
    targets = list(images.values()) + ([x_out] if through_outer else [])
    logger.debug(
        f"Split {spec.format_vertex(x)} | {spec.format_vertex(y)}: "
        f"{len(targets)} fan target(s), outer neighbor healthy={through_outer}"
    )
    fans = ctx.block_fan(b, y, targets)
    paths = [(x, v) + tuple(reversed(fans[images[v]])) for v in chosen]
    if through_outer:
        paths.append((x,) + tuple(reversed(fans[x_out])))
    return paths


def hypercube_survival_paths(
    n: int, faults: Union[FaultSet, Iterable[int]], x: int, y: int
) -> HealthyPathCertificate:
    """At least n − 2ℓ internally disjoint healthy (x,y)-paths of Q_n⊖U

    The cube is split along the lowest dimension where x and y differ;
    ``x`` reaches the far half through chosen healthy neighbor pairs and a
    fan inside the far half collects them at ``y``.

    Raises:
        PreconditionError: If n < 2, an endpoint is faulty, x == y, or the
            bound n − 2ℓ is zero
        ConstructionFailedError: If the construction falls short
    """
    if n < 2:
        raise PreconditionError(f"hypercube paths need n >= 2, got {n}")
    spec = CubeSpec(n, 2)
    spec.check_vertex(x)
    spec.check_vertex(y)
    if x == y:
        raise PreconditionError("endpoints must differ")
    ctx = FaultContext(spec, faults, lowest_differing_dimension(spec, x, y))
    if not (ctx.healthy(x) and ctx.healthy(y)):
        raise PreconditionError("both endpoints must be healthy")
    bound = theorem_bound(spec, ctx.fault_count)

    if ctx.fault_count == 0:
        paths = list(disjoint_paths(ctx.graph, x, y).paths)
    elif bound == 0:
        raise PreconditionError(
            f"bound is zero for {ctx.fault_count} fault(s) in Q_{n}, nothing to build"
        )
    else:
        paths = _split_paths(ctx, x, y)

    if len(paths) < bound:
        raise ConstructionFailedError(f"built {len(paths)} path(s), {bound} required")
    return HealthyPathCertificate(
        spec, ctx.faults.sorted_faults, x, y, bound, tuple(sorted(paths))
    )
