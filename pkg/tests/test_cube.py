#!/usr/bin/env python3
"""
Test k-ary n-cube construction, vertex codes and the structural lemma checks
"""

import pytest

from nbcube.cube import (
    CubeSpec,
    SubcubePartition,
    VertexCode,
    build_cube,
    check_02_property,
    check_counting_lemma,
    check_subcube_partition,
    common_neighbor_count,
    counting_check,
    outer_neighbor,
)
from nbcube.exceptions import PreconditionError
from nbcube.graph_core import vertex_connectivity
from nbcube.survival import FaultSet

GRID = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (2, 5)]


def test_cube_spec():
    """Test parameter validation and derived values"""
    print("Test: CubeSpec")

    assert CubeSpec(3, 2).delta == 3
    assert CubeSpec(3, 3).delta == 6
    assert CubeSpec(2, 5).vertex_count == 25
    assert str(CubeSpec(4, 3)) == "Q_4^3"
    print("  ✓ degree, order and name")

    with pytest.raises(PreconditionError):
        CubeSpec(0, 3)
    with pytest.raises(PreconditionError):
        CubeSpec(2, 1)
    print("  ✓ n < 1 and k < 2 rejected")


def test_vertex_codes():
    """Test digit strings in both directions"""
    print("\nTest: vertex codes")

    spec = CubeSpec(3, 3)
    assert spec.parse_vertex("120") == 15
    assert spec.format_vertex(15) == "120"
    assert spec.digits(15) == (1, 2, 0)
    assert str(VertexCode.from_digits(spec, (2, 2, 2))) == "222"
    assert VertexCode.parse(spec, "011").id == 4
    print("  ✓ plain digits, most significant first")

    wide = CubeSpec(2, 12)
    assert wide.format_vertex(11 * 12 + 3) == "11.3"
    assert wide.parse_vertex("11.3") == 135
    with pytest.raises(PreconditionError):
        wide.parse_vertex("113")
    print("  ✓ dotted digits once k > 10")

    with pytest.raises(PreconditionError):
        spec.parse_vertex("130")
    with pytest.raises(PreconditionError):
        spec.parse_vertex("12")
    with pytest.raises(PreconditionError):
        VertexCode(spec, 27)
    print("  ✓ bad digits, wrong length and out-of-range ids rejected")


def test_build_cube_examples():
    """Test small cubes against their known shapes"""
    print("\nTest: build_cube")

    ring = build_cube(CubeSpec(1, 6))
    assert ring.edges() == [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]
    print("  ✓ Q_1^6 is C_6")

    hypercube = build_cube(CubeSpec(3, 2))
    assert hypercube.vertex_count == 8
    assert hypercube.regular_degree() == 3
    assert hypercube.edge_count == 12
    print("  ✓ Q_3 is 3-regular with 12 edges")

    torus = build_cube(CubeSpec(2, 3))
    assert torus.neighbors(0) == (1, 2, 3, 6)
    print("  ✓ neighbors of 00 in Q_2^3 are 01, 02, 10, 20")

    for n, k in GRID:
        spec = CubeSpec(n, k)
        g = build_cube(spec)
        assert g.regular_degree() == spec.delta, spec
    print("  ✓ every cube of the grid is δ-regular")


def test_cube_connectivity_equals_degree():
    """κ(Q_n^k) = δ"""
    print("\nTest: cube connectivity")

    for n, k in GRID:
        spec = CubeSpec(n, k)
        assert vertex_connectivity(build_cube(spec)) == spec.delta, spec
    print("  ✓ κ = δ across the grid")


def test_outer_neighbor():
    """Test moving a vertex between blocks"""
    print("\nTest: outer_neighbor")

    spec = CubeSpec(3, 3)
    assert spec.format_vertex(outer_neighbor(spec, spec.parse_vertex("120"), 2, 0)) == "020"

    torus = CubeSpec(2, 3)
    image = outer_neighbor(torus, 0, 1, 2)
    assert torus.format_vertex(image) == "20"
    assert build_cube(torus).has_edge(0, image)

    wide = CubeSpec(2, 5)
    image = outer_neighbor(wide, 0, 1, 2)
    assert not build_cube(wide).has_edge(0, image)
    print("  ✓ adjacency iff the digit moves by ±1 mod k")

    with pytest.raises(PreconditionError):
        outer_neighbor(spec, 0, 3, 0)
    with pytest.raises(PreconditionError):
        outer_neighbor(spec, 0, 0, 3)


def test_common_neighbor_count():
    """Test common-neighbor counts on tori"""
    print("\nTest: common_neighbor_count")

    torus = CubeSpec(2, 3)
    assert common_neighbor_count(torus, 0, torus.parse_vertex("11")) == 2
    assert common_neighbor_count(torus, 0, torus.parse_vertex("01")) == 1
    assert common_neighbor_count(CubeSpec(2, 4), 0, 1) == 0
    five = CubeSpec(2, 5)
    assert common_neighbor_count(five, 0, five.parse_vertex("02")) == 1
    print("  ✓ Q_2^3, Q_2^4 and Q_2^5 examples")

    with pytest.raises(PreconditionError):
        common_neighbor_count(torus, 4, 4)


def test_four_ary_matches_hypercube_size():
    """Q_n^4 has the order and degree of Q_{2n}"""
    print("\nTest: Q_n^4 against Q_{2n}")

    for n in range(1, 4):
        quaternary = build_cube(CubeSpec(n, 4))
        binary = build_cube(CubeSpec(2 * n, 2))
        assert quaternary.vertex_count == binary.vertex_count == 4**n
        assert quaternary.regular_degree() == binary.regular_degree() == 2 * n
        assert quaternary.edge_count == binary.edge_count
    print("  ✓ n = 1..3 agree in order, degree and size")


def test_02_property():
    """Common-neighbor values across the grid"""
    print("\nTest: (0,2)-property")

    for n, k in GRID:
        report = check_02_property(CubeSpec(n, k))
        assert report.passed, (n, k, report.violations[:3])
        assert report.configurations == (k**n) * (k**n - 1) // 2
    print("  ✓ no violations across the grid")

    assert set(check_02_property(CubeSpec(2, 4)).value_counts) <= {0, 2}
    report = check_02_property(CubeSpec(3, 4))
    assert report.passed and set(report.value_counts) <= {0, 2}
    assert set(check_02_property(CubeSpec(3, 2)).value_counts) <= {0, 2}
    print("  ✓ k ∈ {2, 4} only produce 0 and 2")

    spec = CubeSpec(2, 5)
    assert check_02_property(spec).value_counts.get(1, 0) > 0
    g = build_cube(spec)
    for y in range(1, spec.vertex_count):
        if common_neighbor_count(spec, 0, y) == 1:
            assert not g.has_edge(0, y)
    print("  ✓ in Q_2^5 a single common neighbor belongs to non-adjacent pairs")


def test_subcube_partition():
    """Blocks along any dimension are copies of the smaller cube"""
    print("\nTest: subcube partition")

    spec = CubeSpec(3, 4)
    partition = SubcubePartition.of(spec)
    assert partition.d == 2
    assert [len(block) for block in partition.blocks] == [16] * 4
    assert partition.adjacent(0, 3) and partition.adjacent(1, 2)
    assert not partition.adjacent(0, 2) and not partition.adjacent(1, 1)
    print("  ✓ default split on the most significant digit")

    for n, k, d in [(3, 3, 0), (3, 3, 2), (2, 5, 1), (3, 4, 1), (3, 2, 0), (1, 4, 0)]:
        report = check_subcube_partition(CubeSpec(n, k), d)
        assert report.passed, (n, k, d, report.violations)
    print("  ✓ partition, copy and cyclic adjacency checks hold")

    faults = FaultSet.of(build_cube(spec), [0, 21, 63])
    assert partition.fault_counts(faults) == (1, 1, 0, 1)


def test_counting_example():
    """Test the healthy outer-pair count around one vertex"""
    print("\nTest: counting_check")

    spec = CubeSpec(3, 3)
    g = build_cube(spec)
    partition = SubcubePartition.of(spec, 2)
    x = spec.parse_vertex("011")

    result = counting_check(spec, FaultSet.of(g, [0]), partition, 0, 1, x)
    assert result.h == 2
    assert result.ok
    print("  ✓ U = {000}: h = 2 and enough healthy pairs near 011")

    result = counting_check(spec, FaultSet.of(g, []), partition, 0, 1, x)
    assert result.h == 4
    assert len(result.healthy_pairs) == 9
    assert result.ok
    print("  ✓ fault-free case")

    with pytest.raises(PreconditionError):
        counting_check(CubeSpec(2, 3), FaultSet.of(build_cube(CubeSpec(2, 3)), []),
                       SubcubePartition.of(CubeSpec(2, 3)), 0, 1, 4)
    with pytest.raises(PreconditionError):
        counting_check(spec, FaultSet.of(g, [0]), partition, 0, 1, spec.parse_vertex("001"))
    with pytest.raises(PreconditionError):
        counting_check(spec, FaultSet.of(g, [0, 13, 26]), partition, 0, 1, x)
    print("  ✓ small cubes, faulty x and ℓ >= n rejected")


def test_counting_lemma_exhaustive():
    """Every fault set of size <= 2 in Q_3^3"""
    print("\nTest: counting lemma on Q_3^3")

    report = check_counting_lemma(CubeSpec(3, 3), 2)
    assert report.passed, report.violations[:3]
    assert report.configurations > 0
    print(f"  ✓ {report.configurations} configurations")


@pytest.mark.slow
def test_counting_lemma_q34():
    report = check_counting_lemma(CubeSpec(3, 4), 2)
    assert report.passed, report.violations[:3]


def main():
    """Run cube tests"""
    print("=" * 60)
    print("Cube Tests")
    print("=" * 60)
    print()

    try:
        test_cube_spec()
        test_vertex_codes()
        test_build_cube_examples()
        test_cube_connectivity_equals_degree()
        test_outer_neighbor()
        test_common_neighbor_count()
        test_four_ary_matches_hypercube_size()
        test_02_property()
        test_subcube_partition()
        test_counting_example()
        test_counting_lemma_exhaustive()

        print()
        print("=" * 60)
        print("All cube tests passed! ✓")
        print("=" * 60)
        return 0

    except Exception as e:
        print(f"\n✗ Test failed: {e}")
        import traceback

        traceback.print_exc()
        return 1


if __name__ == "__main__":
    import sys

    sys.exit(main())
