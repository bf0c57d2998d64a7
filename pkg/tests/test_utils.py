#!/usr/bin/env python3
"""
Test parsing helpers and worker resolution
"""

import logging

import pytest

from nbcube.constants import WORKERS_ENV_VAR
from nbcube.utils import (
    ceil_half,
    format_digits,
    parse_digits,
    parse_int_list,
    parse_pair,
    parse_range,
    resolve_workers,
)


def test_ceil_half():
    print("Test: ceil_half")
    assert [ceil_half(v) for v in range(6)] == [0, 1, 1, 2, 2, 3]
    print("  ✓ ⌈v/2⌉ for 0..5")


def test_parse_range():
    """Test range, single value and list forms"""
    print("\nTest: parse_range")

    assert parse_range("1..4") == (1, 2, 3, 4)
    assert parse_range(" 3 ") == (3,)
    assert parse_range("5,2,4,2") == (2, 4, 5)
    print("  ✓ a..b, a and lists")

    for text in ("", "4..1", "a..3"):
        with pytest.raises(ValueError):
            parse_range(text)
    print("  ✓ empty, decreasing and non-numeric ranges rejected")


def test_parse_lists():
    print("\nTest: parse_int_list / parse_pair")

    assert parse_int_list("") == ()
    assert parse_int_list("0, 13,26") == (0, 13, 26)
    assert parse_pair("3,4") == (3, 4)
    with pytest.raises(ValueError):
        parse_pair("3")
    with pytest.raises(ValueError):
        parse_pair("1,2,3")
    print("  ✓ lists and pairs")


def test_digits():
    print("\nTest: digit strings")

    assert format_digits((1, 2, 0), 3, 10) == "120"
    assert format_digits((11, 0, 3), 12, 10) == "11.0.3"
    assert parse_digits("120") == (1, 2, 0)
    assert parse_digits("11.0.3") == (11, 0, 3)
    with pytest.raises(ValueError):
        parse_digits("1a")
    print("  ✓ plain and dotted forms")


def test_resolve_workers(monkeypatch):
    """Flag beats environment beats default"""
    print("\nTest: resolve_workers")

    monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
    assert resolve_workers(None) == 1
    assert resolve_workers(3) == 3
    monkeypatch.setenv(WORKERS_ENV_VAR, "4")
    assert resolve_workers(None) == 4
    assert resolve_workers(2) == 2
    monkeypatch.setenv(WORKERS_ENV_VAR, "zero")
    assert resolve_workers(None) == 1
    print("  ✓ flag, environment and default")


def test_resolve_workers_warns_below_one(monkeypatch, caplog):
    """Environment values below 1 fall back to one worker with a warning"""
    print("\nTest: resolve_workers below one")

    for value in ("0", "-3"):
        monkeypatch.setenv(WORKERS_ENV_VAR, value)
        caplog.clear()
        with caplog.at_level(logging.WARNING, logger="nbcube.utils"):
            assert resolve_workers(None) == 1
        assert WORKERS_ENV_VAR in caplog.text and "below 1" in caplog.text
    print("  ✓ 0 and -3 warn and use one worker")


def main():
    """Run utility tests"""
    print("=" * 60)
    print("Utility Tests")
    print("=" * 60)
    print()

    try:
        test_ceil_half()
        test_parse_range()
        test_parse_lists()
        test_digits()

        print()
        print("=" * 60)
        print("All utility tests passed! ✓")
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
