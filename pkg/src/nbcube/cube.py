"""
k-ary n-cubes Q_n^k and their subcube decomposition.

Vertices are mixed-radix integers ``Σ u_i k^i`` (u_0 least significant);
digit strings ``u_{n-1}…u_0`` appear only at input/output boundaries.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from nbcube.constants import MAX_PLAIN_DIGIT_RADIX
from nbcube.exceptions import PreconditionError
from nbcube.graph_core import Graph
from nbcube.survival import FaultSet
from nbcube.utils import format_digits, parse_digits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeSpec:
    """Parameters of Q_n^k"""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError(f"dimension must be at least 1, got n={self.n}")
        if self.k < 2:
            raise PreconditionError(f"arity must be at least 2, got k={self.k}")

    @property
    def delta(self) -> int:
        """Degree: n for k = 2, 2n otherwise"""
        return self.n if self.k == 2 else 2 * self.n

    @property
    def vertex_count(self) -> int:
        return self.k**self.n

    def __str__(self) -> str:
        return f"Q_{self.n}^{self.k}"

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise PreconditionError(
                f"vertex {v} is out of range 0..{self.vertex_count - 1} for {self}"
            )

    def check_dimension(self, d: int) -> None:
        if not 0 <= d < self.n:
            raise PreconditionError(f"dimension {d} is out of range 0..{self.n - 1}")

    def check_digit(self, j: int) -> None:
        if not 0 <= j < self.k:
            raise PreconditionError(f"digit {j} is out of range 0..{self.k - 1}")

    def digit(self, v: int, d: int) -> int:
        """u_d of vertex ``v``"""
        return (v // self.k**d) % self.k

    def digits(self, v: int) -> tuple[int, ...]:
        """Digits u_{n-1}, …, u_0 of ``v``"""
        return tuple(self.digit(v, d) for d in reversed(range(self.n)))

    def encode(self, digits: tuple[int, ...]) -> int:
        """Vertex id of a digit tuple given most significant first"""
        if len(digits) != self.n:
            raise PreconditionError(f"expected {self.n} digits, got {len(digits)}")
        value = 0
        for digit in digits:
            self.check_digit(digit)
            value = value * self.k + digit
        return value

    def with_digit(self, v: int, d: int, j: int) -> int:
        """``v`` with u_d replaced by ``j``"""
        place = self.k**d
        return v + (j - self.digit(v, d)) * place

    def format_vertex(self, v: int) -> str:
        self.check_vertex(v)
        return format_digits(self.digits(v), self.k, MAX_PLAIN_DIGIT_RADIX)

    def parse_vertex(self, text: str) -> int:
        """Vertex id of ``"120"``-style or dotted digit text"""
        try:
            digits = parse_digits(text)
        except ValueError as error:
            raise PreconditionError(str(error)) from error
        if self.k > MAX_PLAIN_DIGIT_RADIX and "." not in text and self.n > 1:
            raise PreconditionError(f"use dotted digits for k={self.k}, got {text!r}")
        return self.encode(digits)


@dataclass(frozen=True)
class VertexCode:
    """A cube vertex as both id and digit string"""

    spec: CubeSpec
    id: int

    def __post_init__(self) -> None:
        self.spec.check_vertex(self.id)

    @classmethod
    def from_digits(cls, spec: CubeSpec, digits: tuple[int, ...]) -> "VertexCode":
        return cls(spec, spec.encode(digits))

    @classmethod
    def parse(cls, spec: CubeSpec, text: str) -> "VertexCode":
        return cls(spec, spec.parse_vertex(text))

    @property
    def digits(self) -> tuple[int, ...]:
        return self.spec.digits(self.id)

    def __str__(self) -> str:
        return self.spec.format_vertex(self.id)


def build_cube(spec: CubeSpec) -> Graph:
    """Q_n^k: vertices adjacent iff one digit differs by ±1 mod k"""
    ids = np.arange(spec.vertex_count, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    for d in range(spec.n):
        place = spec.k**d
        digit = (ids // place) % spec.k
        up = ids + ((digit + 1) % spec.k - digit) * place
        edges.extend(zip(ids.tolist(), up.tolist()))
    graph = Graph.from_edges(spec.vertex_count, edges)
    logger.debug(f"Built {spec}: {graph.vertex_count} vertices, {graph.edge_count} edges")
    return graph


@lru_cache(maxsize=32)
def cached_cube(spec: CubeSpec) -> Graph:
    """Shared :func:`build_cube` result (graphs are immutable)"""
    return build_cube(spec)


def outer_neighbor(spec: CubeSpec, v: int, d: int, j: int) -> int:
    """u^j: ``v`` moved to block ``j`` along dimension ``d``

    The result is adjacent to ``v`` iff |u_d − j| ∈ {1, k−1}.
    """
    spec.check_vertex(v)
    spec.check_dimension(d)
    spec.check_digit(j)
    return spec.with_digit(v, d, j)


@dataclass(frozen=True)
class SubcubePartition:
    """Blocks Q[0] … Q[k−1] fixing digit ``d``"""

    spec: CubeSpec
    d: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, spec: CubeSpec, d: Optional[int] = None) -> "SubcubePartition":
        """Partition along ``d`` (default: the most significant digit)"""
        d = spec.n - 1 if d is None else d
        spec.check_dimension(d)
        ids = np.arange(spec.vertex_count, dtype=np.int64)
        digit = (ids // spec.k**d) % spec.k
        blocks = tuple(tuple(ids[digit == i].tolist()) for i in range(spec.k))
        return cls(spec, d, blocks)

    def block_of(self, v: int) -> int:
        return self.spec.digit(v, self.d)

    def adjacent(self, i: int, j: int) -> bool:
        """Whether blocks ``i`` and ``j`` are joined by edges"""
        return (i - j) % self.spec.k in (1, self.spec.k - 1) and i != j

    def outer(self, v: int, j: int) -> int:
        return self.spec.with_digit(v, self.d, j)

    def fault_counts(self, faults: FaultSet) -> tuple[int, ...]:
        """u_i = |U ∩ Q[i]| for every block"""
        counts = [0] * self.spec.k
        for u in faults.faults:
            counts[self.block_of(u)] += 1
        return tuple(counts)


def common_neighbor_count(spec: CubeSpec, x: int, y: int) -> int:
    """|N(x) ∩ N(y)| in Q_n^k"""
    spec.check_vertex(x)
    spec.check_vertex(y)
    if x == y:
        raise PreconditionError("common_neighbor_count needs distinct vertices")
    g = cached_cube(spec)
    return len(g.neighbor_sets[x] & g.neighbor_sets[y])


@dataclass(frozen=True)
class LemmaReport:
    """Result of an exhaustive structural check"""

    name: str
    configurations: int
    violations: tuple[str, ...] = ()
    value_counts: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_02_property(spec: CubeSpec) -> LemmaReport:
    """Common-neighbor counts over every vertex pair

    Counts lie in {0, 2} for k ∈ {2, 4} and in {0, 1, 2} otherwise; for
    k = 3 the count is 1 exactly for adjacent pairs.
    """
    g = cached_cube(spec)
    adjacency = g.to_dense().astype(np.int64)
    common = adjacency @ adjacency
    allowed = {0, 2} if spec.k in (2, 4) else {0, 1, 2}
    violations: list[str] = []
    values: Counter[int] = Counter()
    pairs = 0
    for x, y in combinations(range(spec.vertex_count), 2):
        pairs += 1
        value = int(common[x, y])
        values[value] += 1
        if value not in allowed:
            violations.append(
                f"{spec.format_vertex(x)},{spec.format_vertex(y)}: {value} common"
            )
        elif spec.k == 3 and (value == 1) != g.has_edge(x, y):
            violations.append(
                f"{spec.format_vertex(x)},{spec.format_vertex(y)}: "
                f"{value} common, adjacent={g.has_edge(x, y)}"
            )
    return LemmaReport("(0,2)-property", pairs, tuple(violations), dict(values))


def check_subcube_partition(spec: CubeSpec, d: Optional[int] = None) -> LemmaReport:
    """Blocks partition V, each is a copy of Q_{n−1}^k, block adjacency is cyclic"""
    partition = SubcubePartition.of(spec, d)
    g = cached_cube(spec)
    violations: list[str] = []
    seen = sorted(v for block in partition.blocks for v in block)
    if seen != list(range(spec.vertex_count)):
        violations.append("blocks do not partition the vertex set")

    inner = CubeSpec(spec.n - 1, spec.k) if spec.n > 1 else None
    inner_graph = build_cube(inner) if inner is not None else Graph(((),))
    for i, block in enumerate(partition.blocks):
        sub, mapping = g.induced_subgraph(block)
        if sub.vertex_count != spec.k ** (spec.n - 1):
            violations.append(f"block {i} has {sub.vertex_count} vertices")
            continue
        # drop digit d to re-encode a block vertex as a Q_{n-1}^k vertex
        low = spec.k**partition.d
        relabel = [(v % low) + (v // (low * spec.k)) * low for v in mapping]
        edges = sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in sub.edges())
        if edges != inner_graph.edges():
            violations.append(f"block {i} is not a copy of Q_{spec.n - 1}^{spec.k}")

    for i, j in combinations(range(spec.k), 2):
        joined = any(
            g.has_edge(v, partition.outer(v, j)) for v in partition.blocks[i]
        )
        if joined != partition.adjacent(i, j):
            violations.append(f"blocks {i},{j}: joined={joined}")
    return LemmaReport(
        "subcube partition", spec.k + spec.k * (spec.k - 1) // 2, tuple(violations)
    )


@dataclass(frozen=True)
class CountingResult:
    """Healthy outer-neighbor pairs of one block pair around a vertex"""

    h: int
    healthy_pairs: frozenset[int]
    ok: bool


def counting_check(
    spec: CubeSpec,
    faults: FaultSet,
    partition: SubcubePartition,
    i: int,
    j: int,
    x: int,
) -> CountingResult:
    """Count vertices v of Q[i] with v and v^j healthy

    h = 2n − 2 − ℓ − u_i − u_j; the check holds when more than h such
    vertices exist and at least h of them neighbor ``x``. ℓ = 0 is admitted.

    Raises:
        PreconditionError: If n < 3, k < 3, ℓ >= n, the blocks are not
            adjacent, or ``x`` is not a healthy vertex of Q[i]
    """
    if spec.n < 3 or spec.k < 3:
        raise PreconditionError(f"counting needs n, k >= 3, got {spec}")
    if faults.size >= spec.n:
        raise PreconditionError(f"counting needs fewer than {spec.n} faults")
    if not partition.adjacent(i, j):
        raise PreconditionError(f"blocks {i} and {j} are not adjacent")
    spec.check_vertex(x)
    if partition.block_of(x) != i or not faults.is_healthy(x):
        raise PreconditionError(f"{spec.format_vertex(x)} is not healthy in Q[{i}]")

    counts = partition.fault_counts(faults)
    h = 2 * spec.n - 2 - faults.size - counts[i] - counts[j]
    healthy_pairs = frozenset(
        v
        for v in partition.blocks[i]
        if faults.is_healthy(v) and faults.is_healthy(partition.outer(v, j))
    )
    g = cached_cube(spec)
    near = len(healthy_pairs & g.neighbor_sets[x])
    return CountingResult(h, healthy_pairs, len(healthy_pairs) > h and near >= h)


def check_counting_lemma(
    spec: CubeSpec, l_max: int, d: Optional[int] = None
) -> LemmaReport:
    """:func:`counting_check` over every fault set with ℓ <= l_max (< n),
    every ordered adjacent block pair and every healthy vertex"""
    g = cached_cube(spec)
    partition = SubcubePartition.of(spec, d)
    pairs = [
        (i, j)
        for i in range(spec.k)
        for j in range(spec.k)
        if partition.adjacent(i, j)
    ]
    configurations = 0
    violations: list[str] = []
    for size in range(min(l_max, spec.n - 1) + 1):
        for subset in combinations(range(spec.vertex_count), size):
            faults = FaultSet.of(g, subset)
            for i, j in pairs:
                for x in partition.blocks[i]:
                    if not faults.is_healthy(x):
                        continue
                    configurations += 1
                    result = counting_check(spec, faults, partition, i, j, x)
                    if not result.ok:
                        violations.append(
                            f"U={[spec.format_vertex(u) for u in subset]}, "
                            f"blocks {i}->{j}, x={spec.format_vertex(x)}: "
                            f"h={result.h}, |H|={len(result.healthy_pairs)}"
                        )
    logger.info(f"Counting check on {spec}: {configurations} configuration(s)")
    return LemmaReport("counting", configurations, tuple(violations))
