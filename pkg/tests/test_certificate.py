#!/usr/bin/env python3
"""
Test the certificate validator and the JSON certificate format
"""

import json
from dataclasses import replace

import pytest

from nbcube.certificate_io import (
    certificate_from_dict,
    certificate_to_dict,
    dumps_certificate,
    loads_certificate,
    read_certificate,
    write_certificate,
)
from nbcube.constants import CERTIFICATE_VERSION, DiagnosticCode
from nbcube.construct import HealthyPathCertificate, build_certificate, validate_certificate
from nbcube.cube import CubeSpec
from nbcube.exceptions import MalformedCertificateError


def sample_certificate() -> HealthyPathCertificate:
    spec = CubeSpec(3, 3)
    return build_certificate(spec, [0], spec.parse_vertex("111"), spec.parse_vertex("222"))


def long_path(cert: HealthyPathCertificate) -> int:
    """Index of the first path with an internal vertex"""
    return next(i for i, path in enumerate(cert.paths) if len(path) > 2)


def test_valid_certificate():
    """Test that built certificates pass"""
    print("Test: valid certificate")

    cert = sample_certificate()
    report = validate_certificate(cert)
    assert report.ok and not report.codes
    assert cert.fault_count == 1
    assert cert.path_family.source == cert.x
    print("  ✓ no diagnostics")


def test_mutations_are_detected():
    """Each single corruption yields its diagnostic"""
    print("\nTest: corrupted certificates")

    cert = sample_certificate()
    spec = cert.spec
    index = long_path(cert)
    path = cert.paths[index]

    def paths_with(new_path):
        return cert.paths[:index] + (new_path,) + cert.paths[index + 1 :]

    # an internal vertex moved next to the fault
    faulty = (path[0], spec.parse_vertex("001")) + path[2:]
    codes = validate_certificate(replace(cert, paths=paths_with(faulty))).codes
    assert DiagnosticCode.UNHEALTHY_VERTEX in codes
    print("  ✓ UnhealthyVertex")

    codes = validate_certificate(replace(cert, paths=cert.paths + (path,))).codes
    assert DiagnosticCode.NOT_INTERNALLY_DISJOINT in codes
    print("  ✓ NotInternallyDisjoint")

    codes = validate_certificate(replace(cert, paths=cert.paths[: cert.bound - 1])).codes
    assert codes == {DiagnosticCode.TOO_FEW_PATHS}
    print("  ✓ TooFewPaths")

    codes = validate_certificate(replace(cert, bound=cert.bound + 1)).codes
    assert DiagnosticCode.BOUND_MISMATCH in codes
    print("  ✓ BoundMismatch")

    codes = validate_certificate(replace(cert, paths=paths_with(tuple(reversed(path))))).codes
    assert DiagnosticCode.WRONG_ENDPOINT in codes
    print("  ✓ WrongEndpoint")

    codes = validate_certificate(replace(cert, paths=paths_with((cert.x, cert.y)))).codes
    assert DiagnosticCode.NOT_ADJACENT in codes
    print("  ✓ NotAdjacent")

    codes = validate_certificate(replace(cert, paths=paths_with(path[:2] + path[:2] + path[2:]))).codes
    assert DiagnosticCode.REPEATED_VERTEX in codes
    print("  ✓ RepeatedVertex")

    codes = validate_certificate(replace(cert, paths=paths_with(()))).codes
    assert DiagnosticCode.EMPTY_PATH in codes
    codes = validate_certificate(replace(cert, paths=paths_with(path[:-1] + (27,)))).codes
    assert DiagnosticCode.VERTEX_OUT_OF_RANGE in codes
    print("  ✓ EmptyPath and VertexOutOfRange")

    codes = validate_certificate(replace(cert, y=cert.x, paths=())).codes
    assert DiagnosticCode.SAME_ENDPOINTS in codes
    codes = validate_certificate(replace(cert, x=spec.parse_vertex("010"))).codes
    assert DiagnosticCode.UNHEALTHY_ENDPOINT in codes
    print("  ✓ SameEndpoints and UnhealthyEndpoint")

    direct = HealthyPathCertificate(spec, (), 0, 1, 2, ((0, 1), (0, 1)))
    assert DiagnosticCode.NOT_INTERNALLY_DISJOINT in validate_certificate(direct, 2).codes
    print("  ✓ duplicated x-y edge")


def test_json_round_trip():
    """Decoding an encoded certificate restores it"""
    print("\nTest: JSON encoding")

    cert = sample_certificate()
    text = dumps_certificate(cert)
    assert text.endswith("\n")
    data = json.loads(text)
    assert data["version"] == CERTIFICATE_VERSION
    assert data["spec"] == {"n": 3, "k": 3}
    assert data["digits"]["x"] == "111"
    assert data["digits"]["faults"] == ["000"]
    assert set(data["digits"]) == {"faults", "x", "y", "paths"}
    assert len(data["digits"]["paths"]) == len(data["paths"])
    assert loads_certificate(text) == cert
    print("  ✓ ids and digit mirror")

    wide = HealthyPathCertificate(CubeSpec(2, 12), (), 0, 1, 4, ((0, 1),))
    assert certificate_to_dict(wide)["digits"]["y"] == "0.1"
    assert loads_certificate(dumps_certificate(wide)) == wide
    print("  ✓ dotted digits for k > 10")


def test_malformed_documents():
    """Test decoding failures"""
    print("\nTest: malformed certificates")

    data = certificate_to_dict(sample_certificate())

    tampered = json.loads(json.dumps(data))
    tampered["paths"][0][1] += 1
    with pytest.raises(MalformedCertificateError, match="disagree"):
        certificate_from_dict(tampered)
    print("  ✓ ids changed without their digits")

    for key in ("spec", "paths", "version"):
        broken = dict(data)
        del broken[key]
        with pytest.raises(MalformedCertificateError, match="missing"):
            certificate_from_dict(broken)

    for key, value in [
        ("version", CERTIFICATE_VERSION + 1),
        ("spec", {"n": 0, "k": 3}),
        ("x", "111"),
        ("x", True),
        ("paths", "none"),
        ("faults", [1.5]),
    ]:
        broken = dict(data)
        broken[key] = value
        with pytest.raises(MalformedCertificateError):
            certificate_from_dict(broken)

    with pytest.raises(MalformedCertificateError):
        loads_certificate("{not json")
    with pytest.raises(MalformedCertificateError):
        certificate_from_dict([1, 2])
    print("  ✓ missing fields, bad values and bad JSON")

    without_digits = dict(data)
    del without_digits["digits"]
    assert certificate_from_dict(without_digits) == sample_certificate()
    print("  ✓ digit mirror is optional")


def test_file_round_trip(tmp_path):
    """Test writing and reading certificate files"""
    print("\nTest: certificate files")

    cert = sample_certificate()
    target = tmp_path / "cert.json"
    write_certificate(cert, target)
    assert read_certificate(target) == cert
    with pytest.raises(MalformedCertificateError):
        read_certificate(tmp_path / "missing.json")
    print("  ✓ write then read")


def main():
    """Run certificate tests"""
    print("=" * 60)
    print("Certificate Tests")
    print("=" * 60)
    print()

    try:
        import tempfile
        from pathlib import Path

        test_valid_certificate()
        test_mutations_are_detected()
        test_json_round_trip()
        test_malformed_documents()
        with tempfile.TemporaryDirectory() as folder:
            test_file_round_trip(Path(folder))

        print()
        print("=" * 60)
        print("All certificate tests passed! ✓")
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
