"""
Structure constants from matrix realizations.

gl(m|n) acts on k^{m|n} by matrix units; osp(2|2n) is cut out of gl(2|2n) as
the supermatrices preserving an even supersymmetric form. Root vectors are
scaled so that [e_γ, e_{-γ}] = h_γ, where μ(h_γ) = (γ, μ).

Letters: negative root vector i is letter i, positive root vector i is
letter n + i, with i the PBW index of the root.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from features.rootdata.service import RootSystem
from shared.exceptions import NormalizationImpossible, NotInSpan, VerificationError
from shared.linalg import nullspace, qq, to_fraction
from shared.models import Family, Root

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisElement:
    """Root vector e_{±γ} (kind 'root', sign ±1) or Cartan element H_k (kind 'cartan')."""
    kind: str
    index: int
    sign: int = 0

    @property
    def is_cartan(self) -> bool:
        return self.kind == 'cartan'


@dataclass(frozen=True)
class LetterBracket:
    """[x, y] = Σ c_z z + Σ_k h_k H_k for two root-vector letters."""
    roots: Tuple[Tuple[int, object], ...]
    cartan: Tuple[object, ...]

    @property
    def is_zero(self) -> bool:
        return not self.roots and not any(self.cartan)


class Realization:
    """
    Matrix realization of a preset algebra with normalized root vectors.

    Immutable after construction apart from the memo of letter brackets.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.roots: List[Root] = list(rs.positive_roots)
        self.n = len(self.roots)
        self._build_module()
        self.cartan: List[DomainMatrix] = self._cartan_matrices()
        self._pivots = [min(h.to_dok()) for h in self.cartan]
        self.positive: List[DomainMatrix] = []
        self.negative: List[DomainMatrix] = []
        for root in self.roots:
            raising = self._root_space(root.coords)
            lowering = self._root_space(tuple(-c for c in root.coords))
            self.positive.append(raising)
            self.negative.append(self._normalize(root, raising, lowering))
        self._letter_of_weight = {}
        for i, root in enumerate(self.roots):
            self._letter_of_weight[root.coords] = self.n + i
            self._letter_of_weight[tuple(-c for c in root.coords)] = i
        self._brackets: Dict[Tuple[int, int], LetterBracket] = {}
        logger.debug("Realized %s on a space of dimension %d", rs.label, self.dim)

    # --- module and form ------------------------------------------------------

    def _build_module(self) -> None:
        rs = self.rs
        r = rs.rank
        unit = lambda k, s=1: tuple(Fraction(s if i == k else 0) for i in range(r))
        if rs.spec.family is Family.OSP_2_2N:
            weights = [unit(0), unit(0, -1)]
            parity = [0, 0]
            for i in range(1, r):
                weights += [unit(i), unit(i, -1)]
                parity += [1, 1]
            self.form = {(0, 1): QQ(1), (1, 0): QQ(1)}
            for i in range(1, r):
                plus, minus = 2 * i, 2 * i + 1
                self.form[(plus, minus)] = QQ(1)
                self.form[(minus, plus)] = QQ(-1)
        else:
            m = rs.spec.ranks[0]
            weights = [unit(k) for k in range(r)]
            parity = [0 if k < m else 1 for k in range(r)]
            self.form = None
        self.vector_weights = weights
        self.vector_parity = parity
        self.dim = len(weights)

    def _unit(self, a: int, b: int, value=1) -> DomainMatrix:
        return DomainMatrix.from_dok({(a, b): qq(value)}, (self.dim, self.dim), QQ)

    def _zero(self) -> DomainMatrix:
        return DomainMatrix.zeros((self.dim, self.dim), QQ)

    def _cartan_matrices(self) -> List[DomainMatrix]:
        if self.form is None:
            return [self._unit(k, k) for k in range(self.dim)]
        return [self._unit(2 * k, 2 * k) - self._unit(2 * k + 1, 2 * k + 1)
                for k in range(self.rs.rank)]

    def _units_of_weight(self, coords) -> List[Tuple[int, int]]:
        return [(a, b) for a, b in itertools.product(range(self.dim), repeat=2)
                if tuple(x - y for x, y in zip(self.vector_weights[a], self.vector_weights[b])) == coords]

    def _root_space(self, coords) -> DomainMatrix:
        """First basis vector of the root space g^γ inside the realized algebra."""
        units = self._units_of_weight(coords)
        if self.form is None:
            if len(units) != 1:
                raise NotInSpan(f"Root space of {coords} is not one-dimensional")
            a, b = units[0]
            return self._unit(a, b)
        a0, b0 = units[0]
        parity = (self.vector_parity[a0] + self.vector_parity[b0]) % 2
        # (XᵀJ)[c,d] + (-1)^{|X||c|} (JX)[c,d] = 0
        rows = []
        for c, d in itertools.product(range(self.dim), repeat=2):
            sign = -1 if parity and self.vector_parity[c] else 1
            row = []
            for a, b in units:
                value = Fraction(0)
                if b == c and (a, d) in self.form:
                    value += to_fraction(self.form[(a, d)])
                if b == d and (c, a) in self.form:
                    value += sign * to_fraction(self.form[(c, a)])
                row.append(value)
            if any(row):
                rows.append(row)
        solutions = nullspace(rows, len(units))
        if len(solutions) != 1:
            raise NotInSpan(f"Root space of {coords} has dimension {len(solutions)}")
        dok = {units[k]: qq(v) for k, v in enumerate(solutions[0]) if v}
        return DomainMatrix.from_dok(dok, (self.dim, self.dim), QQ)

    # --- brackets on matrices ----------------------------------------------

    def matrix_parity(self, matrix: DomainMatrix) -> int:
        dok = matrix.to_dok()
        if not dok:
            return 0
        a, b = next(iter(dok))
        return (self.vector_parity[a] + self.vector_parity[b]) % 2

    def supercommutator(self, x: DomainMatrix, y: DomainMatrix) -> DomainMatrix:
        if self.matrix_parity(x) and self.matrix_parity(y):
            return x * y + y * x
        return x * y - y * x

    def coroot_matrix(self, root: Root) -> DomainMatrix:
        """Matrix of h_γ = Σ_k s_k γ_k H_k."""
        total = self._zero()
        for s, c, h in zip(self.rs.signs, root.coords, self.cartan):
            if c:
                total = total + h * qq(s * c)
        return total

    def _normalize(self, root: Root, raising: DomainMatrix, lowering: DomainMatrix) -> DomainMatrix:
        product = self.supercommutator(raising, lowering).to_dok()
        target = self.coroot_matrix(root).to_dok()
        if not product or not target or set(product) != set(target):
            raise NormalizationImpossible(f"[e, f] is not proportional to h for {self.rs.root_name(root)}")
        key = min(target)
        scale = target[key] / product[key]
        if any(product[k] * scale != target[k] for k in target):
            raise NormalizationImpossible(f"[e, f] is not proportional to h for {self.rs.root_name(root)}")
        return lowering * scale

    # --- decomposition --------------------------------------------------------

    def letter_weight(self, letter: int) -> Tuple[Fraction, ...]:
        root = self.roots[letter % self.n]
        return root.coords if letter >= self.n else tuple(-c for c in root.coords)

    def letter_parity(self, letter: int) -> int:
        return self.roots[letter % self.n].parity

    def letter_matrix(self, letter: int) -> DomainMatrix:
        return self.positive[letter - self.n] if letter >= self.n else self.negative[letter]

    def decompose(self, matrix: DomainMatrix, weight) -> LetterBracket:
        """
        Express a weight-homogeneous matrix in the basis.

        Raises:
            NotInSpan: If the matrix is not in the realized algebra
        """
        dok = matrix.to_dok()
        r = self.rs.rank
        if not dok:
            return LetterBracket((), tuple(QQ(0) for _ in range(r)))
        if not any(weight):
            coeffs = [dok.get(p, QQ(0)) / h.to_dok()[p] for p, h in zip(self._pivots, self.cartan)]
            rest = matrix
            for c, h in zip(coeffs, self.cartan):
                if c:
                    rest = rest - h * c
            if not rest.is_zero_matrix:
                raise NotInSpan("Weight-zero bracket is not in the Cartan subalgebra")
            return LetterBracket((), tuple(coeffs))
        letter = self._letter_of_weight.get(tuple(weight))
        if letter is None:
            raise NotInSpan(f"Bracket has non-root weight {weight}")
        basis = self.letter_matrix(letter)
        basis_dok = basis.to_dok()
        pivot = min(basis_dok)
        c = dok.get(pivot, QQ(0)) / basis_dok[pivot]
        if not (matrix - basis * c).is_zero_matrix:
            raise NotInSpan(f"Bracket of weight {weight} is not a multiple of the root vector")
        return LetterBracket(((letter, c),), tuple(QQ(0) for _ in range(r)))

    def letter_bracket(self, x: int, y: int) -> LetterBracket:
        """Super bracket of two root-vector letters, memoized."""
        key = (x, y)
        if key not in self._brackets:
            weight = tuple(a + b for a, b in zip(self.letter_weight(x), self.letter_weight(y)))
            matrix = self.supercommutator(self.letter_matrix(x), self.letter_matrix(y))
            self._brackets[key] = self.decompose(matrix, weight)
        return self._brackets[key]

    # --- public basis-level API -------------------------------------------------

    def basis(self) -> List[BasisElement]:
        elements = [BasisElement('root', i, 1) for i in range(self.n)]
        elements += [BasisElement('root', i, -1) for i in range(self.n)]
        elements += [BasisElement('cartan', k) for k in range(self.rs.rank)]
        return elements

    def root_vector(self, root: Root, sign: int = 1) -> BasisElement:
        return BasisElement('root', self.roots.index(root), sign)

    def matrix(self, element: BasisElement) -> DomainMatrix:
        if element.is_cartan:
            return self.cartan[element.index]
        return self.positive[element.index] if element.sign > 0 else self.negative[element.index]

    def weight(self, element: BasisElement) -> Tuple[Fraction, ...]:
        if element.is_cartan:
            return tuple(Fraction(0) for _ in range(self.rs.rank))
        return tuple(element.sign * c for c in self.roots[element.index].coords)

    def parity(self, element: BasisElement) -> int:
        return 0 if element.is_cartan else self.roots[element.index].parity

    def _combination(self, decomposed: LetterBracket) -> Dict[BasisElement, Fraction]:
        result = {}
        for letter, c in decomposed.roots:
            sign = 1 if letter >= self.n else -1
            result[BasisElement('root', letter % self.n, sign)] = to_fraction(c)
        for k, c in enumerate(decomposed.cartan):
            if c:
                result[BasisElement('cartan', k)] = to_fraction(c)
        return result

    def bracket(self, x: BasisElement, y: BasisElement) -> Dict[BasisElement, Fraction]:
        """[x, y] = xy - (-1)^{|x||y|} yx, re-expressed in the basis."""
        weight = tuple(a + b for a, b in zip(self.weight(x), self.weight(y)))
        matrix = self.supercommutator(self.matrix(x), self.matrix(y))
        return self._combination(self.decompose(matrix, weight))

    def bracket_linear(self, x: BasisElement, combo: Dict[BasisElement, Fraction]) -> Dict[BasisElement, Fraction]:
        result: Dict[BasisElement, Fraction] = {}
        for element, c in combo.items():
            for z, d in self.bracket(x, element).items():
                result[z] = result.get(z, Fraction(0)) + c * d
        return {z: c for z, c in result.items() if c}

    def check_super_antisymmetry(self) -> None:
        for x, y in itertools.product(self.basis(), repeat=2):
            sign = -1 if self.parity(x) and self.parity(y) else 1
            left = self.bracket(x, y)
            right = {z: -sign * c for z, c in self.bracket(y, x).items()}
            if left != right:
                raise VerificationError(f"Super-antisymmetry fails for {x}, {y}")

    def check_super_jacobi(self) -> None:
        """[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] on every basis triple."""
        basis = self.basis()
        for x, y, z in itertools.product(basis, repeat=3):
            sign = -1 if self.parity(x) and self.parity(y) else 1
            left = self.bracket_linear(x, self.bracket(y, z))
            first = {}
            for w, c in self.bracket(x, y).items():
                for v, d in self.bracket(w, z).items():
                    first[v] = first.get(v, Fraction(0)) + c * d
            second = self.bracket_linear(y, self.bracket(x, z))
            right = dict(first)
            for v, d in second.items():
                right[v] = right.get(v, Fraction(0)) + sign * d
            right = {v: c for v, c in right.items() if c}
            if left != right:
                raise VerificationError(f"Super-Jacobi fails for {x}, {y}, {z}")


def realize(rs: RootSystem) -> Realization:
    return Realization(rs)
