"""
Constructive builders of internally disjoint healthy path families.

This package provides one builder per cube family, selected by name or by
the arity of the cube, plus the certificate type every builder emits and
an independent validator for it.
"""

from collections.abc import Iterable
from typing import Callable, Union

from nbcube.construct.adjacent import adjacent_subcube_paths, lemma4_bound
from nbcube.construct.certificate import (
    CertificateReport,
    Diagnostic,
    HealthyPathCertificate,
    theorem_bound,
    validate_certificate,
)
from nbcube.construct.hypercube import hypercube_survival_paths
from nbcube.construct.kary import kary_survival_paths
from nbcube.cube import CubeSpec
from nbcube.survival import FaultSet

# Type alias for path builders
PathBuilder = Callable[
    [
        CubeSpec,  # cube parameters
        Union[FaultSet, Iterable[int]],  # fault set U
        int,  # endpoint x
        int,  # endpoint y
    ],
    HealthyPathCertificate,
]


def _build_hypercube(
    spec: CubeSpec, faults: Union[FaultSet, Iterable[int]], x: int, y: int
) -> HealthyPathCertificate:
    return hypercube_survival_paths(spec.n, faults, x, y)


# Registry of available path builders
PATH_BUILDERS: dict[str, PathBuilder] = {
    "hypercube": _build_hypercube,
    "kary": kary_survival_paths,
}


def get_builder(name: str) -> PathBuilder:
    """Get path builder by name

    Args:
        name: Name of the builder

    Returns:
        Builder function

    Raises:
        KeyError: If builder not found
    """
    return PATH_BUILDERS[name]


def get_available_builders() -> list[str]:
    """Get list of available builder names"""
    return list(PATH_BUILDERS.keys())


def builder_name_for(spec: CubeSpec) -> str:
    return "hypercube" if spec.k == 2 else "kary"


def build_certificate(
    spec: CubeSpec, faults: Union[FaultSet, Iterable[int]], x: int, y: int
) -> HealthyPathCertificate:
    """Build a certificate with the builder matching the arity of ``spec``"""
    return get_builder(builder_name_for(spec))(spec, faults, x, y)


__all__ = [
    "PathBuilder",
    "PATH_BUILDERS",
    "get_builder",
    "get_available_builders",
    "builder_name_for",
    "build_certificate",
    "adjacent_subcube_paths",
    "lemma4_bound",
    "hypercube_survival_paths",
    "kary_survival_paths",
    "HealthyPathCertificate",
    "CertificateReport",
    "Diagnostic",
    "theorem_bound",
    "validate_certificate",
]
