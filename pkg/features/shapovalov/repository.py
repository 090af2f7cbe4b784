"""
Šapovalov element cache following Repository Pattern.
"""
from fractions import Fraction
from typing import Any, Dict, Optional

from core.base_repository import BaseRepository
from shared.models import Method, Root, ShapovalovElement


class ShapovalovRepository(BaseRepository[ShapovalovElement]):
    """JSON cache of computed elements, one file per (algebra, borel, γ, m, ordering, method)."""

    def __init__(self, root, pbw):
        super().__init__(root)
        self.pbw = pbw

    @staticmethod
    def key_for(algebra: str, borel: str, gamma: Root, m: int, ordering: str, method: Method) -> str:
        coords = ','.join(str(c) for c in gamma.coords)
        return f"{algebra}|{borel}|{coords}|{m}|{ordering}|{Method(method).value}"

    def _key(self, entity: ShapovalovElement) -> str:
        return self.key_for(entity.algebra, entity.borel, entity.gamma, entity.m, entity.ordering,
                            entity.method)

    def _to_dict(self, entity: ShapovalovElement) -> Dict[str, Any]:
        data = entity.to_dict()
        data['schema'] = 1
        return data

    def _to_entity(self, data: Dict[str, Any]) -> ShapovalovElement:
        coords = tuple(Fraction(c) for c in data['gamma'])
        gamma = self.pbw.rs.root(coords)
        coeffs = {tuple(p): self.pbw.parse_poly(text) for p, text in data['coeffs']}
        return ShapovalovElement(
            algebra=data['algebra'],
            borel=data['borel'],
            gamma=gamma,
            m=int(data['m']),
            coeffs=coeffs,
            eliminated=int(data['eliminated']),
            ordering=data['ordering'],
            method=Method(data['method']),
            weyl_data=data.get('weyl_data'),
        )

    def find(self, algebra: str, borel: str, gamma: Root, m: int, ordering: str,
             method: Method) -> Optional[ShapovalovElement]:
        return self.find_by_key(self.key_for(algebra, borel, gamma, m, ordering, method))
