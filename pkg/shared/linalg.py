"""
Exact linear algebra over QQ.

Thin wrappers around sympy's DomainMatrix so that feature code can pass
plain lists of Fractions in and get Fractions back.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = List[Fraction]


def qq(value):
    """Convert an int, Fraction or QQ element to a QQ element."""
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def to_fraction(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def domain_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[qq(v) for v in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def to_rows(matrix: DomainMatrix) -> List[Vector]:
    return [[to_fraction(v) for v in row] for row in matrix.to_list()]


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return domain_matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of {x : rows·x = 0}, one vector per free column of the rref."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    basis = domain_matrix(rows, ncols).nullspace()
    return [row for row in to_rows(basis) if any(row)]


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return to_rows(reduced), tuple(pivots)


def solve_particular(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Optional[Vector]:
    """
    One solution of rows·x = rhs with every free unknown set to zero.

    Returns None when the system is inconsistent.
    """
    if not rows:
        return [Fraction(0)] * ncols
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        solution[col] = reduced[i][ncols]
    return solution


def solve_multi(rows: Sequence[Sequence], rhs_columns: Sequence[Sequence], ncols: int):
    """
    Solve rows·X = B for several right-hand sides at once.

    Returns (solutions, rank) where ``solutions`` is None if some column is
    inconsistent. A rank below ``ncols`` means the solution is not unique.
    """
    width = len(rhs_columns)
    augmented = [list(row) + [col[i] for col in rhs_columns] for i, row in enumerate(rows)]
    reduced, pivots = rref(augmented, ncols + width)
    if any(p >= ncols for p in pivots):
        return None, len([p for p in pivots if p < ncols])
    solutions = []
    for k in range(width):
        solution = [Fraction(0)] * ncols
        for i, col in enumerate(pivots):
            solution[col] = reduced[i][ncols + k]
        solutions.append(solution)
    return solutions, len(pivots)
