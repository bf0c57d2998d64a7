"""
JSON encoding of healthy path certificates.

Vertices are stored as integer ids. The ``digits`` sidecar is an object, not
a flat array: its ``faults``, ``x``, ``y`` and ``paths`` keys repeat the
top-level fields with every id written as a digit string (dotted when
k > 10). It is optional on read, but when present it must agree with the ids.
"""

import json
import logging
from pathlib import Path
from typing import Any

from nbcube.constants import CERTIFICATE_VERSION
from nbcube.construct import HealthyPathCertificate
from nbcube.cube import CubeSpec
from nbcube.exceptions import MalformedCertificateError, PreconditionError

logger = logging.getLogger(__name__)


def _digits(spec: CubeSpec, v: int) -> str:
    if 0 <= v < spec.vertex_count:
        return spec.format_vertex(v)
    return "?"


def certificate_to_dict(cert: HealthyPathCertificate) -> dict[str, Any]:
    spec = cert.spec
    return {
        "spec": {"n": spec.n, "k": spec.k},
        "faults": list(cert.faults),
        "x": cert.x,
        "y": cert.y,
        "bound": cert.bound,
        "paths": [list(path) for path in cert.paths],
        "version": CERTIFICATE_VERSION,
        "digits": {
            "faults": [_digits(spec, u) for u in cert.faults],
            "x": _digits(spec, cert.x),
            "y": _digits(spec, cert.y),
            "paths": [[_digits(spec, v) for v in path] for path in cert.paths],
        },
    }


def dumps_certificate(cert: HealthyPathCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def _int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedCertificateError(f"{name} must be an integer, got {value!r}")
    return value


def _int_list(value: Any, name: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise MalformedCertificateError(f"{name} must be a list")
    return tuple(_int(item, name) for item in value)


def certificate_from_dict(data: Any) -> HealthyPathCertificate:
    """Decode a certificate document

    Raises:
        MalformedCertificateError: On missing or mistyped fields, an unknown
            version, an invalid cube or a ``digits`` mirror that disagrees
            with the ids
    """
    if not isinstance(data, dict):
        raise MalformedCertificateError("certificate must be a JSON object")
    missing = [
        key
        for key in ("spec", "faults", "x", "y", "bound", "paths", "version")
        if key not in data
    ]
    if missing:
        raise MalformedCertificateError(f"missing field(s): {', '.join(missing)}")
    if data["version"] != CERTIFICATE_VERSION:
        raise MalformedCertificateError(f"unsupported version {data['version']!r}")
    raw_spec = data["spec"]
    if not isinstance(raw_spec, dict):
        raise MalformedCertificateError("spec must be an object")
    try:
        spec = CubeSpec(_int(raw_spec.get("n"), "spec.n"), _int(raw_spec.get("k"), "spec.k"))
    except PreconditionError as error:
        raise MalformedCertificateError(f"invalid cube: {error}") from error

    paths_raw = data["paths"]
    if not isinstance(paths_raw, list):
        raise MalformedCertificateError("paths must be a list")
    cert = HealthyPathCertificate(
        spec=spec,
        faults=_int_list(data["faults"], "faults"),
        x=_int(data["x"], "x"),
        y=_int(data["y"], "y"),
        bound=_int(data["bound"], "bound"),
        paths=tuple(_int_list(path, "paths") for path in paths_raw),
    )

    if "digits" in data:
        expected = certificate_to_dict(cert)["digits"]
        if data["digits"] != expected:
            raise MalformedCertificateError("digit strings disagree with vertex ids")
    return cert


def loads_certificate(text: str) -> HealthyPathCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise MalformedCertificateError(f"invalid JSON: {error}") from error
    return certificate_from_dict(data)


def write_certificate(cert: HealthyPathCertificate, path: Path) -> None:
    path.write_text(dumps_certificate(cert), encoding="utf-8")
    logger.info(f"Wrote certificate with {len(cert.paths)} path(s) to {path}")


def read_certificate(path: Path) -> HealthyPathCertificate:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise MalformedCertificateError(f"cannot read {path}: {error}") from error
    return loads_certificate(text)
