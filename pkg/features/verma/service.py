"""
Verma module service.

Partitions and partition functions, weight spaces of M(λ), the brute-force
singular-vector solver used as an oracle, and Gram matrices of the deformed
contravariant form.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from core.base_service import BaseService
from shared.exceptions import DimensionMismatch
from shared.linalg import nullspace, qq
from shared.models import FormalCharacter, GramMatrix, Lattice, Partition, Root, Weight

logger = logging.getLogger(__name__)

T_RING, T = ring("T", QQ)


class VermaService(BaseService):
    """Verma module service - weight spaces, characters and the contravariant form."""

    def __init__(self, context):
        super().__init__(context)
        self._expansions: List[Lattice] = [self.rs.simple_coefficients(r) for r in self.pbw.roots]
        self._partitions: Dict[Tuple[Lattice, Tuple[Root, ...]], List[Partition]] = {}

    # --- partitions ------------------------------------------------------------

    def partitions(self, eta: Lattice, excluded: Iterable[Root] = ()) -> List[Partition]:
        """
        All partitions of η avoiding X, in enumeration order.

        Roots are visited in PBW order and exponents tried from the largest down,
        so the output order is deterministic.
        """
        eta = tuple(eta)
        excluded = tuple(sorted(set(excluded), key=lambda r: r.coords))
        key = (eta, excluded)
        if key not in self._partitions:
            if any(c < 0 for c in eta):
                self._partitions[key] = []
            else:
                skip = {self.pbw.roots.index(r) for r in excluded}
                self._partitions[key] = list(self._enumerate(eta, 0, skip))
        return self._partitions[key]

    def _enumerate(self, rest: Lattice, index: int, skip) -> Iterable[Partition]:
        if index == len(self._expansions):
            if not any(rest):
                yield ()
            return
        root = self.pbw.roots[index]
        expansion = self._expansions[index]
        if index in skip:
            top = 0
        else:
            top = min(rest[j] // c for j, c in enumerate(expansion) if c)
            if root.isotropic:
                top = min(top, 1)
        for k in range(top, -1, -1):
            remainder = tuple(r - k * c for r, c in zip(rest, expansion))
            for tail in self._enumerate(remainder, index + 1, skip):
                yield (k,) + tail

    def p_x_character(self, excluded: Iterable[Root], depth: int) -> FormalCharacter:
        """
        Truncated expansion of Π_{odd α ∉ X}(1 + ε^{-α}) / Π_{even α}(1 - ε^{-α}).

        Raises:
            NotOrthogonalIsotropic: If X is not a set of pairwise orthogonal isotropic roots
            DimensionMismatch: If the expansion disagrees with partition counts
        """
        excluded = list(excluded)
        self.rs.check_orthogonal_isotropic(excluded)
        zero = tuple(0 for _ in self.rs.simple)
        table: Dict[Lattice, int] = {zero: 1}
        for root, expansion in zip(self.pbw.roots, self._expansions):
            if root in excluded:
                continue
            height = sum(expansion)
            updated = dict(table)
            for eta, count in table.items():
                k = 1
                while sum(eta) + k * height <= depth:
                    moved = tuple(e + k * c for e, c in zip(eta, expansion))
                    updated[moved] = updated.get(moved, 0) + count
                    if root.odd:
                        break
                    k += 1
            table = updated
        for eta, count in table.items():
            enumerated = len(self.partitions(eta, excluded))
            if enumerated != count:
                raise DimensionMismatch(
                    f"Character coefficient {count} at {self.rs.format_lattice(eta)} "
                    f"but {enumerated} partitions")
        return FormalCharacter(depth, table)

    def character_additivity(self, gamma: Root, depth: int) -> Dict:
        """
        Compare p with p_γ + ε^{-γ}p_γ as truncated characters.

        This is the character identity [M(λ)] = [M^γ(λ)] + [M^γ(λ-γ)].
        """
        full = self.p_x_character([], depth)
        part = self.p_x_character([gamma], depth)
        shifted = part.shifted(self.rs.simple_coefficients(gamma))
        failures = []
        for eta in sorted(set(full.table) | set(part.table) | set(shifted.table)):
            if full.coefficient(eta) != part.coefficient(eta) + shifted.coefficient(eta):
                failures.append(list(eta))
        return {
            'gamma': self.rs.root_name(gamma),
            'depth': depth,
            'holds': not failures,
            'failures': failures,
        }

    # --- Verma module weight spaces ----------------------------------------------

    def dimension(self, eta: Lattice) -> int:
        return len(self.partitions(eta))

    def raising_matrix(self, weight: Weight, eta: Lattice) -> Tuple[List[List[Fraction]], List[Partition]]:
        """Matrix of v ↦ (e_α v)_{α∈Π} on M(λ)^{λ-η} in the PBW basis."""
        basis = self.partitions(eta)
        rows: List[List[Fraction]] = []
        for simple in self.rs.simple:
            letter = self.pbw.positive_letter(simple)
            target_eta = tuple(e - c for e, c in zip(eta, self.rs.simple_coefficients(simple)))
            targets = self.partitions(target_eta)
            if not targets:
                continue
            block = [[Fraction(0)] * len(basis) for _ in targets]
            for col, pi in enumerate(basis):
                image = self.pbw.evaluate_vector(self.pbw.apply_letter(letter, {pi: self.pbw.ring.one}), weight)
                for target, value in image.items():
                    block[targets.index(target)][col] = value
            rows.extend(block)
        return rows, basis

    def singular_vectors(self, weight: Weight, eta: Lattice) -> List[Dict[Partition, Fraction]]:
        """Basis of the singular vectors in M(λ)^{λ-η}, by an exact null-space solve."""
        rows, basis = self.raising_matrix(weight, eta)
        if not basis:
            return []
        vectors = []
        for kernel in nullspace(rows, len(basis)):
            vectors.append({pi: c for pi, c in zip(basis, kernel) if c})
        logger.debug("%d singular vectors at depth %s", len(vectors), self.rs.format_lattice(eta))
        return vectors

    # --- contravariant form -----------------------------------------------------

    def _pairing_poly(self, left: Partition, right: Partition) -> PolyElement:
        """⟨e_{-π}v, e_{-π'}v⟩ with λ symbolic: apply e_{a1}, e_{a2}, ... to e_{-π'}v."""
        vector = {right: self.pbw.ring.one}
        for letter in self.pbw.word_of(left):
            vector = self.pbw.apply_letter(letter + self.pbw.n, vector)
            if not vector:
                break
        zero = tuple(0 for _ in right)
        return vector.get(zero, self.pbw.ring.zero)

    def deform(self, poly: PolyElement, weight: Weight, xi: Weight) -> PolyElement:
        """Substitute H_k ↦ λ_k + ξ_k T and return an element of QQ[T]."""
        values = [qq(a) + qq(b) * T for a, b in zip(weight.coords, xi.coords)]
        result = T_RING.zero
        for monom, coeff in poly.terms():
            term = T_RING.ground_new(coeff)
            for value, e in zip(values, monom[:-1]):
                if e:
                    term *= value ** e
            if monom[-1]:
                term *= T ** monom[-1]
            result += term
        return result

    def gram_matrix(self, weight: Weight, xi: Weight, eta: Lattice) -> GramMatrix:
        """Gram matrix of the contravariant form on M(λ+Tξ)^{λ+Tξ-η}; ⟨v, v⟩ = 1."""
        basis = self.partitions(eta)
        entries = [[self.deform(self._pairing_poly(left, right), weight, xi) for right in basis]
                   for left in basis]
        return GramMatrix(tuple(eta), basis, entries)

    def lattice_points(self, depth: int) -> List[Lattice]:
        """Every η ∈ Q⁺ of height ≤ depth with P(η) nonempty, by height then coordinates."""
        table = self.p_x_character([], depth).table
        return sorted(table, key=lambda eta: (sum(eta), eta))

    def describe_partition(self, pi: Partition) -> Dict[str, int]:
        return {self.rs.root_name(root): k for root, k in zip(self.pbw.roots, pi) if k}

    def describe_vector(self, vector: Dict[Partition, Fraction]) -> List[Dict]:
        return [{'partition': self.describe_partition(pi), 'coeff': str(c)}
                for pi, c in sorted(vector.items(), reverse=True)]

