"""
Algebra context shared by the computation services.

Building the realization and the PBW memo tables is the expensive part of
every request, so contexts are cached per algebra string.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from features.pbw.service import PBWAlgebra
from features.rootdata.service import RootSystem, build_root_system, parse_algebra
from features.structure.service import Realization, realize
from shared.models import AlgebraSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgebraContext:
    """Root system, matrix realization and PBW engine of one algebra with a fixed Borel."""
    rs: RootSystem
    realization: Realization
    pbw: PBWAlgebra

    @property
    def label(self) -> str:
        return self.rs.label

    @property
    def borel_label(self) -> str:
        return self.rs.spec.borel_label


@lru_cache(maxsize=32)
def _build(spec: AlgebraSpec) -> AlgebraContext:
    rs = build_root_system(spec)
    realization = realize(rs)
    logger.info("Prepared context for %s (%s)", spec.label, spec.borel_label)
    return AlgebraContext(rs, realization, PBWAlgebra(realization))


def get_context(algebra) -> AlgebraContext:
    """Context for an algebra string or AlgebraSpec, built once per process."""
    spec = parse_algebra(algebra) if isinstance(algebra, str) else algebra
    return _build(spec)
