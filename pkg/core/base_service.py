"""
Base service implementation following Service Layer Pattern and SOLID principles.

Provides the abstract base class for the computation services. A service is
bound to one algebra context and validates its inputs before delegating to the
exact-arithmetic layers.
"""
from abc import ABC
from typing import Iterable, List, Optional, Sequence, Union

from features.context import AlgebraContext, get_context
from shared.exceptions import DimensionMismatch, ValidationError
from shared.models import AlgebraSpec, Lattice, Root, Weight


class BaseService(ABC):
    """
    Abstract base service - Open/Closed Principle.

    Holds the algebra context and the input coercions every service shares.
    Subclasses implement the computations only.
    """

    def __init__(self, context: AlgebraContext):
        """
        Initialize service with its algebra context - Dependency Inversion.

        Args:
            context: Root system, realization and PBW engine of one algebra
        """
        self.context = context
        self.rs = context.rs
        self.pbw = context.pbw

    @classmethod
    def for_algebra(cls, algebra: Union[str, AlgebraSpec], *args, **kwargs):
        """Build a service for an algebra string such as ``"gl(2|2)@anti"``."""
        return cls(get_context(algebra), *args, **kwargs)

    # --- input coercion ------------------------------------------------------

    def weight(self, value: Union[str, Weight, Sequence]) -> Weight:
        if isinstance(value, Weight):
            if len(value.coords) != self.rs.rank:
                raise DimensionMismatch(f"Expected {self.rs.rank} coordinates for {self.rs.label}")
            return value
        if isinstance(value, str):
            return self.rs.parse_weight(value)
        return self.rs.weight(value)

    def root(self, value: Union[str, Root, Sequence]) -> Root:
        if isinstance(value, Root):
            return self.rs.root(value.coords)
        if isinstance(value, str):
            return self.rs.parse_root(value)
        return self.rs.root(value)

    def positive_root(self, value) -> Root:
        root = self.root(value)
        if not self.rs.is_positive(root):
            raise ValidationError(f"{self.rs.root_name(root)} is not a positive root")
        return root

    def roots(self, values: Optional[Iterable]) -> List[Root]:
        return [self.positive_root(v) for v in (values or [])]

    def lattice(self, value) -> Lattice:
        """η as simple-root coordinates; accepts a root expression or a coordinate list."""
        if isinstance(value, str):
            if value.strip() in ('', '0'):
                return tuple(0 for _ in self.rs.simple)
            return self.rs.simple_coefficients(self.rs.parse_vector(value))
        eta = tuple(int(c) for c in value)
        if len(eta) != len(self.rs.simple):
            raise DimensionMismatch(f"Expected {len(self.rs.simple)} simple-root coordinates")
        return eta
