"""
Healthy path certificates and their independent validator.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from nbcube.constants import DiagnosticCode
from nbcube.cube import CubeSpec, build_cube
from nbcube.exceptions import PreconditionError
from nbcube.graph_core import Path, PathFamily
from nbcube.survival import FaultSet
from nbcube.survival import theorem_bound as _theorem_bound

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HealthyPathCertificate:
    """Claimed family of internally disjoint healthy (x,y)-paths of a cube"""

    spec: CubeSpec
    faults: tuple[int, ...]
    x: int
    y: int
    bound: int
    paths: tuple[Path, ...]

    @property
    def path_family(self) -> PathFamily:
        return PathFamily(self.x, self.y, self.paths)

    @property
    def fault_count(self) -> int:
        return len(set(self.faults))


def theorem_bound(spec: CubeSpec, fault_count: int) -> int:
    """Guaranteed connectivity of Q_n^k⊖U for |U| = ``fault_count``"""
    return _theorem_bound(spec.n, spec.k, fault_count)


@dataclass(frozen=True)
class Diagnostic:
    code: DiagnosticCode
    message: str


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of :func:`validate_certificate`"""

    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    @property
    def codes(self) -> set[DiagnosticCode]:
        return {diagnostic.code for diagnostic in self.diagnostics}


def validate_certificate(
    cert: HealthyPathCertificate, expected_bound: Optional[int] = None
) -> CertificateReport:
    """Re-check a certificate against a freshly built cube

    Args:
        cert: Certificate to check
        expected_bound: Bound the certificate must claim; defaults to the
            survival-graph connectivity floor for ``len(cert.faults)`` faults

    Returns:
        CertificateReport; ``ok`` is True iff no diagnostic was raised
    """
    found: list[Diagnostic] = []

    def report(code: DiagnosticCode, message: str) -> None:
        found.append(Diagnostic(code, message))

    try:
        spec = CubeSpec(cert.spec.n, cert.spec.k)
    except PreconditionError as error:
        report(DiagnosticCode.MALFORMED_SPEC, str(error))
        return CertificateReport(tuple(found))
    g = build_cube(spec)
    count = g.vertex_count

    def in_range(v: int) -> bool:
        return isinstance(v, int) and 0 <= v < count

    bad_faults = [u for u in cert.faults if not in_range(u)]
    if bad_faults:
        report(DiagnosticCode.VERTEX_OUT_OF_RANGE, f"faults {bad_faults} out of range")
        return CertificateReport(tuple(found))
    faults = FaultSet.of(g, cert.faults)

    endpoints_ok = True
    for name, v in (("x", cert.x), ("y", cert.y)):
        if not in_range(v):
            report(DiagnosticCode.VERTEX_OUT_OF_RANGE, f"{name}={v} out of range")
            endpoints_ok = False
        elif not faults.is_healthy(v):
            report(DiagnosticCode.UNHEALTHY_ENDPOINT, f"{name}={v} lies in N[U]")
    if endpoints_ok and cert.x == cert.y:
        report(DiagnosticCode.SAME_ENDPOINTS, f"x = y = {cert.x}")

    internal: Counter[int] = Counter()
    direct_edges = 0
    for index, path in enumerate(cert.paths):
        if len(path) == 0:
            report(DiagnosticCode.EMPTY_PATH, f"path {index} is empty")
            continue
        outside = [v for v in path if not in_range(v)]
        if outside:
            report(
                DiagnosticCode.VERTEX_OUT_OF_RANGE,
                f"path {index} has vertices {outside} out of range",
            )
            continue
        if path[0] != cert.x or path[-1] != cert.y:
            report(
                DiagnosticCode.WRONG_ENDPOINT,
                f"path {index} runs {path[0]} -> {path[-1]}",
            )
        if len(set(path)) != len(path):
            report(DiagnosticCode.REPEATED_VERTEX, f"path {index} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                report(DiagnosticCode.NOT_ADJACENT, f"path {index}: {a}-{b} is no edge")
        for v in path:
            if faults.is_faulty(v):
                report(DiagnosticCode.UNHEALTHY_VERTEX, f"path {index}: {v} in N[U]")
        internal.update(set(path[1:-1]))
        if len(path) == 2:
            direct_edges += 1

    shared = sorted(v for v, uses in internal.items() if uses > 1)
    if shared:
        report(
            DiagnosticCode.NOT_INTERNALLY_DISJOINT,
            f"internal vertices {shared} shared between paths",
        )
    if direct_edges > 1:
        report(DiagnosticCode.NOT_INTERNALLY_DISJOINT, "edge x-y used more than once")

    if len(cert.paths) < cert.bound:
        report(
            DiagnosticCode.TOO_FEW_PATHS,
            f"{len(cert.paths)} path(s) for a claimed bound of {cert.bound}",
        )
    expected = (
        theorem_bound(spec, faults.size) if expected_bound is None else expected_bound
    )
    if cert.bound != expected:
        report(
            DiagnosticCode.BOUND_MISMATCH,
            f"certificate claims {cert.bound}, expected {expected}",
        )

    if found:
        logger.debug(f"Certificate rejected with {len(found)} diagnostic(s)")
    return CertificateReport(tuple(found))
