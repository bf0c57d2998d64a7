#!/usr/bin/env python3
"""
Simple test to verify the package and its command-line entry point import
"""

import sys


def test_package_imports():
    """Test that the package can be imported"""
    print("Testing package imports...")

    import nbcube
    from nbcube import constants

    print("✓ nbcube imported")
    print(f"  version = {nbcube.__version__}")
    print(f"  DEFAULT_BUDGET = {constants.DEFAULT_BUDGET}")
    assert nbcube.__version__
    for name in nbcube.__all__:
        assert hasattr(nbcube, name), name
    print(f"✓ {len(nbcube.__all__)} public names resolve")

    from nbcube.construct import get_available_builders

    print(f"✓ Path builders: {get_available_builders()}")

    from nbcube.main import COMMANDS, build_parser

    assert set(COMMANDS) == {"table", "witness", "paths", "verify", "check-lemmas"}
    assert build_parser().prog == "nbcube"
    print(f"✓ Commands: {sorted(COMMANDS)}")


def test_numpy_backed_functions():
    """Test that the numpy/scipy backed helpers work"""
    print("\nTesting numpy-backed functions...")

    from nbcube import CubeSpec, build_cube, components, vertex_connectivity

    g = build_cube(CubeSpec(2, 3))
    dense = g.to_dense()
    print(f"✓ Q_2^3 adjacency shape: {dense.shape}")
    assert dense.shape == (9, 9)
    assert int(dense.sum()) == 2 * g.edge_count
    assert components(g) == [tuple(range(9))]
    assert vertex_connectivity(g) == 4
    print("✓ components and connectivity")


def main():
    """Run all tests"""
    print("=" * 60)
    print("Testing Package Structure")
    print("=" * 60)
    print()

    success = True
    for test in (test_package_imports, test_numpy_backed_functions):
        try:
            test()
        except Exception as e:
            print(f"✗ {test.__name__} failed: {e}")
            import traceback

            traceback.print_exc()
            success = False

    print()
    print("=" * 60)
    if success:
        print("All tests passed! ✓")
        print("=" * 60)
        return 0
    else:
        print("Some tests failed!")
        print("=" * 60)
        return 1


if __name__ == "__main__":
    sys.exit(main())
