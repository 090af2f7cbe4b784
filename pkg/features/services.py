"""
Service wiring shared by the HTTP application and the command line.

Repositories are attached here so that callers only name an algebra.
"""
from typing import Optional

from features.context import get_context
from features.jantzen.service import JantzenService
from features.rootdata.service import RootSystem
from features.shapovalov.repository import ShapovalovRepository
from features.shapovalov.service import ShapovalovService
from features.verma.service import VermaService
from shared.config import Config


def root_system(algebra) -> RootSystem:
    return get_context(algebra).rs


def verma_service(algebra) -> VermaService:
    return VermaService(get_context(algebra))


def shapovalov_service(algebra, seed: Optional[int] = None,
                       cache_dir: Optional[str] = None) -> ShapovalovService:
    """ShapovalovService with the element cache enabled when a directory is configured."""
    context = get_context(algebra)
    cache_dir = cache_dir or Config.CACHE_DIR
    repository = ShapovalovRepository(cache_dir, context.pbw) if cache_dir else None
    return ShapovalovService(context, repository=repository, seed=seed)


def jantzen_service(algebra, seed: Optional[int] = None,
                    cache_dir: Optional[str] = None) -> JantzenService:
    shapovalov = shapovalov_service(algebra, seed=seed, cache_dir=cache_dir)
    return JantzenService(shapovalov.context, shapovalov=shapovalov, seed=seed)
