"""
Hyperplanes H_{γ,m}, sample grids on them and polynomial interpolation.

Grids are tensor grids in affine coordinates of the hyperplane. Coordinates
that are not pinned to integers get offsets k/q with distinct k, so the
sample points avoid the integral walls of the even roots.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from shared.exceptions import InterpolationMismatch, SampleDegeneracy
from shared.linalg import qq, rank, solve_multi, solve_particular
from shared.models import Root, Weight

logger = logging.getLogger(__name__)


def grid_offsets(count: int, seed: int = 0) -> List[Fraction]:
    """Distinct non-integral offsets k/q; the seed moves q."""
    denominator = 4 * count + 7 + 2 * seed
    return [Fraction(k + 1, denominator) for k in range(count)]


def monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of total degree ≤ degree, by degree then lexicographically."""
    result = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            result.append(tuple(exps))
    return sorted(set(result), key=lambda e: (sum(e), tuple(-x for x in e)))


def top_part(poly: PolyElement, nvars: int) -> Tuple[int, PolyElement]:
    """Total degree in the first ``nvars`` generators and the homogeneous top component."""
    if not poly:
        return -1, poly
    degree = max(sum(monom[:nvars]) for monom in poly.itermonoms())
    top = poly.ring.from_dict({m: c for m, c in poly.iterterms() if sum(m[:nvars]) == degree})
    return degree, top


class Hyperplane:
    """
    H_{γ,m} = {λ : (λ+ρ, γ) = m(γ,γ)/2} with one coordinate solved for.

    The eliminated coordinate is the largest index k with γ_k ≠ 0, which makes
    reduction modulo the hyperplane ideal a canonical form.
    """

    def __init__(self, rs, pbw, gamma: Root, m: int = 1):
        self.rs = rs
        self.pbw = pbw
        self.gamma = gamma
        self.m = m
        self.form = [Fraction(s) * c for s, c in zip(rs.signs, gamma.coords)]
        self.value = Fraction(m) * rs.pairing(gamma, gamma) / 2 - rs.pairing(rs.rho, gamma)
        self.eliminated = max(k for k, c in enumerate(self.form) if c)
        self.free = [k for k in range(rs.rank) if k != self.eliminated]
        self.polynomial = pbw.coroot_poly(gamma) - qq(self.value)
        h = pbw.H[self.eliminated]
        self._substitution = h - self.polynomial * qq(1 / self.form[self.eliminated])
        self._forced = {}

    @property
    def eliminated_name(self) -> str:
        return self.rs.coordinate_names[self.eliminated]

    def reduce(self, poly: PolyElement) -> PolyElement:
        h = self.pbw.H[self.eliminated]
        if not poly or poly.degree(h) <= 0:
            return poly
        return poly.compose(h, self._substitution)

    def reduce_vector(self, vector: Dict) -> Dict:
        reduced = {}
        for key, poly in vector.items():
            value = self.reduce(poly)
            if value:
                reduced[key] = value
        return reduced

    def contains(self, weight: Weight) -> bool:
        return sum((f * c for f, c in zip(self.form, weight.coords)), Fraction(0)) == self.value

    def point(self, free_values: Sequence[Fraction]) -> Weight:
        coords = [Fraction(0)] * self.rs.rank
        for k, v in zip(self.free, free_values):
            coords[k] = Fraction(v)
        rest = sum((f * c for f, c in zip(self.form, coords)), Fraction(0))
        coords[self.eliminated] = (self.value - rest) / self.form[self.eliminated]
        return Weight(tuple(coords))

    def free_values(self, weight: Weight) -> Tuple[Fraction, ...]:
        return tuple(weight.coords[k] for k in self.free)

    def forced(self, root: Root) -> bool:
        """Whether (λ+ρ, root) is constant on the hyperplane."""
        if root not in self._forced:
            self._forced[root] = self.reduce(self.pbw.shifted_form_poly(root)).is_ground
        return self._forced[root]

    def is_generic(self, weight: Weight) -> bool:
        """No integral even wall and no isotropic wall through λ unless forced by H."""
        for alpha in self.rs.even_positive:
            value = self.rs.shifted_pairing(weight, alpha)
            if value.denominator == 1 and not self.forced(alpha):
                return False
        for delta in self.rs.isotropic_positive:
            if self.rs.shifted_pairing(weight, delta) == 0 and not self.forced(delta):
                return False
        return True

    def grid(self, per_axis: int, seed: int = 0, start: int = 0) -> Iterator[Weight]:
        offsets = grid_offsets(len(self.free), seed)
        axes = [[o + start + j for j in range(per_axis)] for o in offsets]
        for values in itertools.product(*axes):
            yield self.point(values)

    def generic_points(self, count: int, seed: int = 0, start: int = 0) -> List[Weight]:
        """The first ``count`` generic points of a growing grid, deterministically."""
        points: List[Weight] = []
        seen = set()
        per_axis = 1
        while len(points) < count:
            per_axis += 1
            if per_axis > count + 8:
                raise SampleDegeneracy(f"Could not find {count} generic points on the hyperplane")
            for weight in self.grid(per_axis, seed, start):
                if weight in seen:
                    continue
                seen.add(weight)
                if self.is_generic(weight):
                    points.append(weight)
                    if len(points) == count:
                        break
        return points


class RecursionGrid:
    """
    Points λ ∈ H_{γ,m} with (λ+ρ, β_j^∨) = -p_j for the roots β_j of N(w⁻¹).

    Walls independent of the hyperplane and of earlier walls are pinned to
    the sampled p-values. A dependent wall takes the value forced by the
    others, and only points where every p_j is a positive integer are kept.
    Remaining directions are fixed by unit coordinates chosen greedily for
    independence and sampled with non-integral offsets.
    """

    def __init__(self, hyperplane: Hyperplane, n_set: Sequence[Root]):
        rs = hyperplane.rs
        self.hyperplane = hyperplane
        self.n_set = list(n_set)
        rows = [list(hyperplane.form)]
        self.pinned: List[Root] = []
        for beta in self.n_set:
            scale = 2 / rs.pairing(beta, beta)
            candidate = rows + [[Fraction(s) * c * scale for s, c in zip(rs.signs, beta.coords)]]
            if rank(candidate, rs.rank) == len(candidate):
                rows = candidate
                self.pinned.append(beta)
        if len(self.pinned) < len(self.n_set):
            logger.debug("%d of %d walls of N(w⁻¹) are fixed by the others",
                         len(self.n_set) - len(self.pinned), len(self.n_set))
        self.units = []
        for k in range(rs.rank):
            if len(rows) == rs.rank:
                break
            candidate = rows + [[Fraction(int(j == k)) for j in range(rs.rank)]]
            if rank(candidate, rs.rank) == len(candidate):
                rows = candidate
                self.units.append(k)
        self.rows = rows

    def wall_value(self, weight: Weight, beta: Root) -> Fraction:
        """p = -(λ+ρ, β^∨)."""
        rs = self.hyperplane.rs
        return -rs.coroot_pairing(weight + rs.rho, beta)

    def admissible(self, weight: Weight) -> bool:
        for beta in self.n_set:
            p = self.wall_value(weight, beta)
            if p <= 0 or p.denominator != 1:
                return False
        return True

    def point(self, p_values: Sequence[int], unit_values: Sequence[Fraction]) -> Weight:
        rs = self.hyperplane.rs
        rhs = [self.hyperplane.value]
        for beta, p in zip(self.pinned, p_values):
            rhs.append(Fraction(-p) - rs.coroot_pairing(rs.rho, beta))
        rhs.extend(unit_values)
        solution = solve_particular(self.rows, rhs, rs.rank)
        return Weight(tuple(solution))

    def grid(self, per_axis: int, seed: int = 0, start: int = 1) -> Iterator[Weight]:
        offsets = grid_offsets(len(self.units), seed)
        p_axes = [range(start, start + per_axis)] * len(self.pinned)
        unit_axes = [[o + start + j for j in range(per_axis)] for o in offsets]
        for p_values in itertools.product(*p_axes):
            for unit_values in itertools.product(*unit_axes):
                weight = self.point(p_values, unit_values)
                if self.admissible(weight):
                    yield weight


def fit_polynomials(
    hyperplane: Hyperplane,
    samples: Sequence[Tuple[Weight, Dict[Hashable, Fraction]]],
    keys: Sequence[Hashable],
    degree: int,
) -> Optional[Dict[Hashable, PolyElement]]:
    """
    Interpolate one polynomial per key in the free coordinates of the hyperplane.

    Returns None when the samples do not determine every monomial coefficient.

    Raises:
        InterpolationMismatch: If no polynomial of the given degree fits the samples
    """
    pbw = hyperplane.pbw
    exps = monomials(len(hyperplane.free), max(degree, 0))
    rows = []
    for weight, _ in samples:
        values = hyperplane.free_values(weight)
        row = []
        for e in exps:
            term = Fraction(1)
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            row.append(term)
        rows.append(row)
    columns = [[values.get(key, Fraction(0)) for _, values in samples] for key in keys]
    solutions, found = solve_multi(rows, columns, len(exps))
    if solutions is None:
        raise InterpolationMismatch(
            f"Samples are not interpolated by polynomials of degree {degree}")
    if found < len(exps):
        logger.debug("Interpolation rank %d < %d, extending grid", found, len(exps))
        return None
    ngens = len(pbw.H) + 1
    fitted = {}
    for key, coefficients in zip(keys, solutions):
        terms = {}
        for e, c in zip(exps, coefficients):
            if c:
                monom = [0] * ngens
                for k, x in zip(hyperplane.free, e):
                    monom[k] = x
                terms[tuple(monom)] = qq(c)
        poly = pbw.ring.from_dict(terms) if terms else pbw.ring.zero
        if poly:
            fitted[key] = poly
    return fitted
