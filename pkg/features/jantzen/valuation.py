"""
T-adic valuations of elementary divisors over QQ[T] localized at T = 0.

Entries are truncated power series in T. Pivoting on a minimal-valuation
entry keeps every later entry divisible by the pivot's power of T, so each
elimination step is exact modulo T^K.
"""
import logging
from typing import List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement

from shared.exceptions import DimensionMismatch, SampleDegeneracy

logger = logging.getLogger(__name__)


def valuation(poly: PolyElement) -> int:
    """Order of vanishing at T = 0; -1 for the zero polynomial."""
    if not poly:
        return -1
    return min(monom[0] for monom in poly.itermonoms())


def precision(rows: Sequence[Sequence[PolyElement]]) -> int:
    """Σ_rows max degree + 1 bounds the valuation of the determinant."""
    return sum(max((p.degree() for p in row if p), default=0) for row in rows) + 1


def smith_valuations(rows: Sequence[Sequence[PolyElement]]) -> Tuple[int, ...]:
    """
    Valuations of the elementary divisors, ascending.

    Raises:
        SampleDegeneracy: If the matrix is singular over the function field
    """
    if not rows:
        return ()
    ring = rows[0][0].ring
    t = ring.gens[0]
    k = precision(rows)
    matrix = [[rs_trunc(p, t, k) for p in row] for row in rows]
    found: List[int] = []
    while matrix:
        best = None
        for i, row in enumerate(matrix):
            for j, entry in enumerate(row):
                v = valuation(entry)
                if v >= 0 and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None or best[0] >= k:
            raise SampleDegeneracy("Gram matrix is singular over QQ(T); choose another deformation")
        v, i, j = best
        found.append(v)
        matrix[0], matrix[i] = matrix[i], matrix[0]
        for row in matrix:
            row[0], row[j] = row[j], row[0]
        shift = t ** v
        inverse = rs_series_inversion(matrix[0][0].exquo(shift), t, k)
        reduced = []
        for row in matrix[1:]:
            if row[0]:
                factor = rs_mul(row[0].exquo(shift), inverse, t, k)
                row = [entry - rs_mul(factor, top, t, k) for entry, top in zip(row, matrix[0])]
            reduced.append(row[1:])
        matrix = reduced
    return tuple(sorted(found))


def layers_from_valuations(valuations: Sequence[int]) -> Tuple[int, ...]:
    """d_i = #{valuations ≥ i} for i = 1, ..., max."""
    top = max(valuations, default=0)
    return tuple(sum(1 for v in valuations if v >= i) for i in range(1, top + 1))


def determinant_valuation(rows: Sequence[Sequence[PolyElement]]) -> int:
    """T-adic valuation of det over QQ[T] by an exact fraction-free determinant."""
    if not rows:
        return 0
    ring = rows[0][0].ring
    domain = ring.to_domain()
    det = DomainMatrix([list(row) for row in rows], (len(rows), len(rows)), domain).det()
    if not det:
        raise SampleDegeneracy("Gram determinant vanishes identically")
    return valuation(ring(det))


def checked_valuations(rows: Sequence[Sequence[PolyElement]]) -> Tuple[int, ...]:
    """
    Smith valuations cross-checked against the determinant.

    Raises:
        DimensionMismatch: If Σ valuations differs from the determinant valuation
    """
    found = smith_valuations(rows)
    expected = determinant_valuation(rows)
    if sum(found) != expected:
        raise DimensionMismatch(f"Elementary divisors give {sum(found)}, determinant gives {expected}")
    return found
