"""
Abelian Cayley graphs and small neighbor-cut witnesses.

Groups are explicit products Z_{m_1} × … × Z_{m_r}. Elements are encoded
as mixed-radix integers with the last coordinate least significant, so the
cube Z_k^n shares vertex ids with :mod:`nbcube.cube`.
"""

import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional

import numpy as np
import numpy.typing as npt

from nbcube.constants import DEFAULT_BUDGET, MAX_PLAIN_DIGIT_RADIX, Classification, Symmetry
from nbcube.cube import CubeSpec
from nbcube.exceptions import (
    ContainsIdentityError,
    DoesNotGenerateError,
    InvalidOrderingError,
    NotInverseClosedError,
    PreconditionError,
)
from nbcube.graph_core import Graph, components
from nbcube.survival import FaultSet, classify_survival, neighbor_connectivity_exact
from nbcube.utils import ceil_half, format_digits, parse_digits

logger = logging.getLogger(__name__)

IDENTITY = 0

_GROUP_FACTOR = re.compile(r"^Z_?(\d+)$", re.IGNORECASE)


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z_{m_1} × … × Z_{m_r} under coordinatewise addition"""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cyclic_orders:
            raise PreconditionError("a group needs at least one cyclic factor")
        for order in self.cyclic_orders:
            if order < 2:
                raise PreconditionError(f"cyclic factor orders must be >= 2, got {order}")

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def __str__(self) -> str:
        return "x".join(f"Z{order}" for order in self.cyclic_orders)

    @cached_property
    def coordinates(self) -> npt.NDArray[np.int64]:
        """``(order, rank)`` table of the coordinates of every element"""
        table = np.zeros((self.order, self.rank), dtype=np.int64)
        ids = np.arange(self.order, dtype=np.int64)
        for position in reversed(range(self.rank)):
            table[:, position] = ids % self.cyclic_orders[position]
            ids = ids // self.cyclic_orders[position]
        return table

    def check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise PreconditionError(f"element {a} is out of range 0..{self.order - 1}")

    def element_id(self, coordinates: tuple[int, ...]) -> int:
        if len(coordinates) != self.rank:
            raise PreconditionError(
                f"expected {self.rank} coordinates, got {len(coordinates)}"
            )
        value = 0
        for coordinate, order in zip(coordinates, self.cyclic_orders):
            if not 0 <= coordinate < order:
                raise PreconditionError(f"coordinate {coordinate} outside Z{order}")
            value = value * order + coordinate
        return value

    def element_coordinates(self, a: int) -> tuple[int, ...]:
        self.check_element(a)
        return tuple(int(c) for c in self.coordinates[a])

    def _from_array(self, coordinates: npt.NDArray[np.int64]) -> npt.NDArray[np.int64]:
        ids = np.zeros(coordinates.shape[0], dtype=np.int64)
        for position, order in enumerate(self.cyclic_orders):
            ids = ids * order + coordinates[:, position]
        return ids

    def translate_all(self, s: int) -> npt.NDArray[np.int64]:
        """Ids of g + s for every element g"""
        self.check_element(s)
        orders = np.array(self.cyclic_orders, dtype=np.int64)
        moved = (self.coordinates + self.coordinates[s]) % orders
        return self._from_array(moved)

    def add(self, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        summed = tuple(
            (x + y) % order
            for x, y, order in zip(
                self.coordinates[a], self.coordinates[b], self.cyclic_orders
            )
        )
        return self.element_id(tuple(int(c) for c in summed))

    def inverse(self, a: int) -> int:
        self.check_element(a)
        negated = tuple(
            (-int(x)) % order for x, order in zip(self.coordinates[a], self.cyclic_orders)
        )
        return self.element_id(negated)

    def format_element(self, a: int) -> str:
        return format_digits(
            self.element_coordinates(a), max(self.cyclic_orders), MAX_PLAIN_DIGIT_RADIX
        )

    def parse_element(self, text: str) -> int:
        """Element id of ``"01"``-style or dotted coordinate text"""
        text = text.strip()
        try:
            if self.rank == 1 and "." not in text:
                return self.element_id((int(text),))
            coordinates = parse_digits(text)
        except ValueError as error:
            raise PreconditionError(str(error)) from error
        if max(self.cyclic_orders) > MAX_PLAIN_DIGIT_RADIX and "." not in text:
            raise PreconditionError(f"use dotted coordinates for {self}, got {text!r}")
        return self.element_id(coordinates)


def parse_group(text: str) -> AbelianGroupSpec:
    """Parse ``"Z3xZ3"`` (factors separated by ``x``, ``*`` or ``×``)"""
    factors = [part.strip() for part in re.split(r"[x×*]", text.strip()) if part.strip()]
    orders = []
    for factor in factors:
        match = _GROUP_FACTOR.match(factor)
        if match is None:
            raise PreconditionError(f"cannot parse group factor {factor!r} in {text!r}")
        orders.append(int(match.group(1)))
    return AbelianGroupSpec(tuple(orders))


@dataclass(frozen=True)
class GeneratorSet:
    """Connection set S of a Cayley graph, sorted by element id"""

    group: AbelianGroupSpec
    elements: tuple[int, ...]

    @classmethod
    def of(cls, group: AbelianGroupSpec, elements) -> "GeneratorSet":
        members = sorted({int(s) for s in elements})
        for s in members:
            group.check_element(s)
        return cls(group, tuple(members))

    @property
    def degree(self) -> int:
        return len(self.elements)

    def validate(self) -> None:
        """Raises ContainsIdentityError or NotInverseClosedError"""
        members = set(self.elements)
        if IDENTITY in members:
            raise ContainsIdentityError("the identity lies in the generator set")
        for s in self.elements:
            inverse = self.group.inverse(s)
            if inverse not in members:
                raise NotInverseClosedError(
                    f"inverse {self.group.format_element(inverse)} of "
                    f"{self.group.format_element(s)} is missing"
                )

    def __str__(self) -> str:
        return ",".join(self.group.format_element(s) for s in self.elements)


def parse_generators(group: AbelianGroupSpec, text: str) -> GeneratorSet:
    """Parse ``"01,02,10,20"`` into a generator set of ``group``"""
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise PreconditionError("empty generator list")
    return GeneratorSet.of(group, (group.parse_element(part) for part in parts))


def cube_generators(spec: CubeSpec) -> GeneratorSet:
    """{e_i, e_i^{-1}} of Z_k^n"""
    group = AbelianGroupSpec((spec.k,) * spec.n)
    elements = []
    for d in range(spec.n):
        elements.append(spec.k**d)
        elements.append((spec.k - 1) * spec.k**d)
    return GeneratorSet.of(group, elements)


def build_cayley(group: AbelianGroupSpec, generators: GeneratorSet) -> Graph:
    """Cay(Γ, S) with edges {g, g + s}

    Raises:
        ContainsIdentityError: If e ∈ S
        NotInverseClosedError: If S is not closed under inverses
        DoesNotGenerateError: If the graph is disconnected
    """
    if generators.group != group:
        raise PreconditionError("generators belong to another group")
    generators.validate()
    ids = np.arange(group.order, dtype=np.int64).tolist()
    edges: list[tuple[int, int]] = []
    for s in generators.elements:
        edges.extend(zip(ids, group.translate_all(s).tolist()))
    graph = Graph.from_edges(group.order, edges)
    if len(components(graph)) > 1:
        raise DoesNotGenerateError(f"{{{generators}}} does not generate {group}")
    logger.debug(f"Built Cay({group}, {{{generators}}}): {graph.edge_count} edges")
    return graph


@dataclass(frozen=True)
class CayleyGraph:
    """A Cayley graph together with its group and connection set"""

    group: AbelianGroupSpec
    generators: GeneratorSet
    graph: Graph

    @classmethod
    def build(cls, group: AbelianGroupSpec, generators: GeneratorSet) -> "CayleyGraph":
        return cls(group, generators, build_cayley(group, generators))

    @classmethod
    def of_cube(cls, spec: CubeSpec) -> "CayleyGraph":
        generators = cube_generators(spec)
        return cls.build(generators.group, generators)

    @property
    def degree(self) -> int:
        return self.generators.degree

    def is_cycle(self) -> bool:
        return self.degree == 2 and self.group.order >= 3


def _pair_ok(group: AbelianGroupSpec, members: frozenset[int], a: int, b: int) -> bool:
    product = group.add(a, b)
    return product != IDENTITY and product not in members


def is_valid_ordering(generators: GeneratorSet, ordering: tuple[int, ...]) -> bool:
    """Whether ``ordering`` lists S once and s_{2i−1}·s_{2i} ∉ S ∪ {e} for each pair"""
    if sorted(ordering) != list(generators.elements):
        return False
    members = frozenset(generators.elements)
    return all(
        _pair_ok(generators.group, members, ordering[i], ordering[i + 1])
        for i in range(0, len(ordering) - 1, 2)
    )


def find_valid_ordering(generators: GeneratorSet) -> Optional[tuple[int, ...]]:
    """Lexicographically least valid ordering of S, or None"""
    group = generators.group
    members = frozenset(generators.elements)

    @lru_cache(maxsize=None)
    def complete(remaining: frozenset[int]) -> Optional[tuple[int, ...]]:
        if len(remaining) <= 1:
            return tuple(remaining)
        for a in sorted(remaining):
            for b in sorted(remaining - {a}):
                if not _pair_ok(group, members, a, b):
                    continue
                rest = complete(remaining - {a, b})
                if rest is not None:
                    return (a, b) + rest
        return None

    ordering = complete(members)
    logger.debug(f"Ordering of {{{generators}}}: {ordering}")
    return ordering


def theorem3_witness(cayley: CayleyGraph, ordering: tuple[int, ...]) -> FaultSet:
    """Fault set of at most ⌈δ/2⌉ vertices cutting the identity off

    Pair sums v_i = s_{2i−1} + s_{2i} form U'. For odd δ the least-id
    vertex of N(s_δ) at distance two from e joins them when one exists.

    Raises:
        InvalidOrderingError: If ``ordering`` is not valid for the generators
    """
    if not is_valid_ordering(cayley.generators, ordering):
        raise InvalidOrderingError(
            f"{ordering} is not a valid ordering of {{{cayley.generators}}}"
        )
    g = cayley.graph
    faults = {
        cayley.group.add(ordering[i], ordering[i + 1])
        for i in range(0, len(ordering) - 1, 2)
    }
    if len(ordering) % 2 == 1:
        near = g.closed_neighborhood([IDENTITY])
        distance_two = g.open_neighborhood(g.neighbors(IDENTITY)) - near
        candidates = distance_two & g.neighbor_sets[ordering[-1]]
        if candidates:
            faults.add(min(candidates))
    return FaultSet.of(g, faults)


@dataclass(frozen=True)
class WitnessReport:
    """Verification of a neighbor-cut witness on a Cayley graph"""

    faults: tuple[int, ...]
    bound: int
    classification: Classification
    identity_survives: bool
    pairs_adjacent: bool

    @property
    def size(self) -> int:
        return len(self.faults)

    @property
    def passed(self) -> bool:
        return self.size <= self.bound and self.classification in (
            Classification.DISCONNECTED,
            Classification.COMPLETE,
        )


def verify_witness(
    cayley: CayleyGraph, faults: FaultSet, ordering: Optional[tuple[int, ...]] = None
) -> WitnessReport:
    """Re-derive the survival graph of ``faults`` and check the witness bound"""
    g = cayley.graph
    pairs_adjacent = True
    if ordering is not None:
        for i in range(0, len(ordering) - 1, 2):
            v = cayley.group.add(ordering[i], ordering[i + 1])
            pairs_adjacent &= g.has_edge(v, ordering[i]) and g.has_edge(v, ordering[i + 1])
    return WitnessReport(
        faults=faults.sorted_faults,
        bound=ceil_half(cayley.degree),
        classification=classify_survival(g, faults),
        identity_survives=faults.is_healthy(IDENTITY),
        pairs_adjacent=pairs_adjacent,
    )


@dataclass(frozen=True)
class ConjectureReport:
    """Exact κ_NB of a non-cycle Cayley graph against ⌈δ/2⌉"""

    value: Optional[int]
    bound: int
    applicable: bool

    @property
    def within_bound(self) -> bool:
        return not self.applicable or (self.value is not None and self.value <= self.bound)

    @property
    def attains_bound(self) -> bool:
        return self.applicable and self.value == self.bound


def conjecture_check(cayley: CayleyGraph, budget: int = DEFAULT_BUDGET) -> ConjectureReport:
    """Compare exact κ_NB with ⌈δ/2⌉; cycles are skipped

    Raises:
        BudgetExhaustedError: If κ_NB exceeds ``budget``
    """
    bound = ceil_half(cayley.degree)
    if cayley.is_cycle():
        logger.info(f"{cayley.group} with {{{cayley.generators}}} is a cycle, skipped")
        return ConjectureReport(None, bound, False)
    result = neighbor_connectivity_exact(
        cayley.graph, budget, Symmetry.VERTEX_TRANSITIVE
    )
    return ConjectureReport(result.value, bound, True)
