"""
Jantzen filtration service.

Layer dimensions of the Jantzen filtration from T-adic valuations of Gram
matrices, the sum formula with contributions from A(λ) and B(λ), dimensions
of the modules M^X(λ) obtained by deformation and specialization, and the
structure check for two orthogonal isotropic roots.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.base_service import BaseService
from features.jantzen.valuation import checked_valuations, determinant_valuation, layers_from_valuations
from features.pbw.service import VermaVector
from features.shapovalov.service import ShapovalovService
from features.verma.service import VermaService
from shared.config import Config
from shared.exceptions import (
    DimensionMismatch, NotGenericSample, PreconditionViolated, PropertyViolated,
    RankDisagreement, SampleDegeneracy,
)
from shared.linalg import nullspace, rank
from shared.models import (
    DeformationConfig, JantzenLayers, Lattice, Root, SumFormulaReport, SumFormulaRow, Weight,
)

logger = logging.getLogger(__name__)

FILTRATION = 'filtration'
MX = 'mx'
PIG = 'pig'
MODES = (FILTRATION, MX, PIG)

DEPTH_TOO_SMALL = 'DepthTooSmallForSanity'
NONORTHOGONAL_B = 'NonOrthogonalB'

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DENOMINATORS = (1, 101, 103, 107, 109, 113)


class JantzenService(BaseService):
    """Jantzen service - filtration layers, sum formulas and M^X dimensions."""

    def __init__(self, context, shapovalov: Optional[ShapovalovService] = None,
                 seed: Optional[int] = None):
        super().__init__(context)
        self.seed = Config.SEED if seed is None else seed
        self.shapovalov = shapovalov or ShapovalovService(context, seed=self.seed)
        self.verma: VermaService = self.shapovalov.verma

    # --- deformation directions -----------------------------------------------------

    def _satisfies(self, xi: Weight, mode: str, excluded: Sequence[Root]) -> bool:
        rs = self.rs
        if any(rs.pairing(xi, g) for g in excluded):
            return False
        if mode == FILTRATION:
            return all(rs.pairing(xi, r) for r in rs.positive_roots)
        if mode == MX:
            return all(rs.coroot_pairing(xi, a).denominator != 1 for a in rs.even_positive)
        return all(rs.pairing(xi, a) for a in rs.even_positive)

    def _config(self, xi: Weight, mode: str, excluded: Sequence[Root]) -> DeformationConfig:
        rs = self.rs
        return DeformationConfig(
            xi=xi,
            orthogonal_to=tuple(excluded),
            nonintegral_even=all(rs.coroot_pairing(xi, a).denominator != 1 for a in rs.even_positive),
            nonzero_even=all(rs.pairing(xi, a) for a in rs.even_positive),
            nonzero_all=all(rs.pairing(xi, r) for r in rs.positive_roots),
        )

    def _candidates(self, excluded: Sequence[Root]) -> Iterable[Weight]:
        yield self.rs.rho
        rows = [[Fraction(s) * c for s, c in zip(self.rs.signs, g.coords)] for g in excluded]
        basis = nullspace(rows, self.rs.rank)
        for q in _DENOMINATORS:
            for shift in range(len(_PRIMES)):
                coords = [Fraction(0)] * self.rs.rank
                for i, vector in enumerate(basis):
                    c = Fraction(_PRIMES[(i + shift) % len(_PRIMES)] * (i + 1), q)
                    coords = [x + c * v for x, v in zip(coords, vector)]
                yield Weight(tuple(coords))

    def choose_deformation(self, mode: str = FILTRATION, excluded: Sequence = (),
                           xi=None) -> DeformationConfig:
        """
        ξ for the given mode: ρ when it qualifies, else a deterministic search.

        ``filtration`` needs (ξ, α) ≠ 0 for every positive root, ``mx`` needs
        (ξ, γ) = 0 on X and (ξ, α^∨) ∉ ℤ for even α, ``pig`` needs (ξ, γ) = 0
        on X and (ξ, α) ≠ 0 for even α.

        Raises:
            PreconditionViolated: If a supplied ξ breaks the constraints of the mode
            SampleDegeneracy: If the search finds nothing
        """
        if mode not in MODES:
            raise PreconditionViolated(f"Unknown deformation mode {mode!r}")
        excluded = self.roots(excluded)
        if xi is not None:
            xi = self.weight(xi)
            if not self._satisfies(xi, mode, excluded):
                raise PreconditionViolated(f"ξ = {xi.to_dict()} does not satisfy the {mode} constraints")
            return self._config(xi, mode, excluded)
        for candidate in self._candidates(excluded):
            if self._satisfies(candidate, mode, excluded):
                logger.debug("Deformation for %s: ξ = %s", mode, candidate.to_dict())
                return self._config(candidate, mode, excluded)
        raise SampleDegeneracy(f"No {mode} deformation direction found for {self.rs.label}")

    # --- layers ---------------------------------------------------------------------

    def layer_dimensions(self, weight, cfg: Optional[DeformationConfig] = None, eta=None) -> JantzenLayers:
        """
        Jantzen layers (d_1, d_2, ...) at λ - η.

        Raises:
            SampleDegeneracy: If the Gram matrix is singular over QQ(T)
            DimensionMismatch: If Σ d_i differs from the determinant valuation
        """
        weight = self.weight(weight)
        cfg = cfg or self.choose_deformation(FILTRATION)
        eta = self.lattice(eta if eta is not None else [0] * len(self.rs.simple))
        gram = self.verma.gram_matrix(weight, cfg.xi, eta)
        if not gram.size:
            return JantzenLayers(eta, (), ())
        valuations = checked_valuations(gram.entries)
        return JantzenLayers(eta, layers_from_valuations(valuations), valuations)

    def determinant_valuation(self, weight, cfg: Optional[DeformationConfig] = None, eta=None) -> int:
        weight = self.weight(weight)
        cfg = cfg or self.choose_deformation(FILTRATION)
        eta = self.lattice(eta if eta is not None else [0] * len(self.rs.simple))
        gram = self.verma.gram_matrix(weight, cfg.xi, eta)
        return determinant_valuation(gram.entries)

    def layer_table(self, weight, depth: int, cfg: Optional[DeformationConfig] = None) -> List[JantzenLayers]:
        weight = self.weight(weight)
        cfg = cfg or self.choose_deformation(FILTRATION)
        return [self.layer_dimensions(weight, cfg, eta) for eta in self.verma.lattice_points(depth)]

    # --- sum formula ----------------------------------------------------------------

    def _p(self, eta: Sequence[int], excluded: Sequence[Root] = ()) -> int:
        if any(c < 0 for c in eta):
            return 0
        return len(self.verma.partitions(tuple(eta), excluded))

    @staticmethod
    def _minus(eta: Sequence[int], offset: Sequence[int]) -> Lattice:
        return tuple(a - b for a, b in zip(eta, offset))

    def sum_formula_report(self, weight, depth: Optional[int] = None,
                           cfg: Optional[DeformationConfig] = None) -> SumFormulaReport:
        """
        Compare Σ_i dim M_i(λ) with Σ_{A(λ)} p(η - nα) + Σ_{B(λ)} p_γ(η - γ) for every η up to depth.

        Here nα = λ - s_α·λ with n = (λ+ρ, α^∨).
        """
        weight = self.weight(weight)
        depth = Config.DEPTH if depth is None else depth
        cfg = cfg or self.choose_deformation(FILTRATION)
        rs = self.rs
        a_set, b_set = rs.ab_sets(weight)
        offsets: Dict[str, Tuple[Lattice, Tuple[Root, ...]]] = {}
        for alpha in a_set:
            n = int(rs.shifted_pairing(weight, alpha))
            shift = tuple(n * c for c in rs.simple_coefficients(alpha))
            offsets[f"A:{rs.root_name(alpha)}"] = (shift, ())
        for gamma in b_set:
            offsets[f"B:{rs.root_name(gamma)}"] = (rs.simple_coefficients(gamma), (gamma,))

        flags = []
        if offsets and all(sum(shift) > depth for shift, _ in offsets.values()):
            flags.append(DEPTH_TOO_SMALL)
        if any(rs.pairing(x, y) for x, y in itertools.combinations(b_set, 2)):
            flags.append(NONORTHOGONAL_B)

        rows = []
        for eta in self.verma.lattice_points(depth):
            layers = self.layer_dimensions(weight, cfg, eta)
            contributions = {}
            for name, (shift, excluded) in offsets.items():
                count = self._p(self._minus(eta, shift), excluded)
                if count:
                    contributions[name] = count
            row = SumFormulaRow(eta, layers.total, sum(contributions.values()), contributions)
            if not row.holds:
                logger.warning("Sum formula fails at %s: %d != %d",
                               rs.format_lattice(eta), row.lhs, row.rhs)
            rows.append(row)
        report = SumFormulaReport(weight, depth, rows, a_set, b_set, cfg, flags)
        logger.info("Sum formula for %s at λ=%s through depth %d: %s",
                    rs.label, weight.to_dict(), depth, 'pass' if report.verdict else 'fail')
        return report

    # --- M^X(λ) ---------------------------------------------------------------------

    def _check_on_hyperplanes(self, weight: Weight, excluded: Sequence[Root]) -> None:
        for gamma in excluded:
            if not self.rs.on_hyperplane(weight, gamma, 1):
                raise PreconditionViolated(f"λ is not on H_{self.rs.root_name(gamma)}")

    def _spanning_vectors(self, gamma: Root, eta: Lattice) -> List[VermaVector]:
        """e_{-π} θ_γ v_λ for π ∈ P(η - γ), symbolic in λ."""
        theta = self.shapovalov.compute_shapovalov(gamma, 1)
        base = self.shapovalov.vector(theta)
        vectors = []
        for pi in self.verma.partitions(self._minus(eta, self.rs.simple_coefficients(gamma))):
            vector = base
            for letter in reversed(self.pbw.word_of(pi)):
                vector = self.pbw.apply_letter(letter, vector)
            vectors.append(vector)
        return vectors

    def _rank_at(self, vectors: Sequence[VermaVector], weight: Weight, eta: Lattice) -> int:
        basis = self.verma.partitions(eta)
        rows = []
        for vector in vectors:
            values = self.pbw.evaluate_vector(vector, weight)
            rows.append([values.get(pi, Fraction(0)) for pi in basis])
        return rank(rows, len(basis))

    def _t_points(self, attempt: int) -> Tuple[Fraction, Fraction]:
        k = self.seed + attempt
        return Fraction(3 + 2 * k, 11 + 4 * k), Fraction(7 + 3 * k, 13 + 6 * k)

    def _generic_rank(self, vectors: Sequence[VermaVector], weight: Weight, xi: Weight,
                      eta: Lattice) -> int:
        """
        Rank over QQ(T) along λ + Tξ, estimated from two evaluation points that must agree.

        Each specialization is a lower bound for the rank over QQ(T) and equals it
        outside the finitely many T where a maximal minor vanishes. Agreement of
        two points is taken as the rank; it is not a proof of equality.

        Raises:
            RankDisagreement: If every pair of points disagrees
        """
        if not vectors:
            return 0
        for attempt in range(Config.MAX_RESAMPLE + 1):
            s, t = self._t_points(attempt)
            first = self._rank_at(vectors, weight + xi.scale(s), eta)
            second = self._rank_at(vectors, weight + xi.scale(t), eta)
            if first == second:
                return first
            logger.debug("Ranks %d and %d at T=%s, %s; resampling", first, second, s, t)
        raise RankDisagreement(f"Ranks along λ+Tξ never agreed at {self.rs.format_lattice(eta)}")

    def mx_weight_dims(self, weight, excluded: Sequence = (), depth: Optional[int] = None,
                       cfg: Optional[DeformationConfig] = None) -> Dict:
        """
        dim M^X(λ̃)^{λ̃-η} over QQ(T), checked against |P_X(η)| for every η up to depth.

        For two roots the submodules W₁ ⊃ W₂ ⊃ W₃ are checked as well.

        Raises:
            PreconditionViolated: If λ is off some H_γ, γ ∈ X
            RankDisagreement: If the two T points keep disagreeing
            DimensionMismatch: If a quotient dimension differs from |P_X(η)|
            PropertyViolated: If a membership in the W-series fails
        """
        weight = self.weight(weight)
        excluded = self.roots(excluded)
        self.rs.check_orthogonal_isotropic(excluded)
        self._check_on_hyperplanes(weight, excluded)
        depth = Config.DEPTH if depth is None else depth
        cfg = cfg or self.choose_deformation(MX, excluded)
        if any(self.rs.pairing(cfg.xi, g) for g in excluded):
            raise PreconditionViolated("ξ must be orthogonal to every root of X")

        rows = []
        for eta in self.verma.lattice_points(depth):
            vectors = []
            for gamma in excluded:
                vectors.extend(self._spanning_vectors(gamma, eta))
            submodule = self._generic_rank(vectors, weight, cfg.xi, eta)
            dim = self.verma.dimension(eta) - submodule
            expected = self._p(eta, excluded)
            if dim != expected:
                raise DimensionMismatch(
                    f"dim M^X at {self.rs.format_lattice(eta)} is {dim}, expected {expected}")
            rows.append({'eta': list(eta), 'dim': dim, 'expected': expected})

        series = None
        if len(excluded) == 2:
            series = self._w_series(weight, cfg.xi, *excluded)
        logger.info("M^X dimensions for %s, X=%s through depth %d agree with p_X",
                    self.rs.label, [self.rs.root_name(g) for g in excluded], depth)
        return {
            'lambda': weight.to_dict(),
            'X': [self.rs.root_name(g) for g in excluded],
            'depth': depth,
            'deformation': cfg.to_dict(),
            'rows': rows,
            'series': series,
            'verdict': 'pass',
        }

    def _w_series(self, weight: Weight, xi: Weight, gamma: Root, gamma_prime: Root) -> Dict:
        """θ_γθ_{γ'}v ∈ W₂, θ_{γ'}θ_γv ∈ W₃ and θ_{γ'}θ_γθ_{γ'}v = 0 along λ + Tξ."""
        sh = self.shapovalov
        first = sh.compute_shapovalov(gamma, 1)
        second = sh.compute_shapovalov(gamma_prime, 1)
        eta = tuple(a + b for a, b in zip(self.rs.simple_coefficients(gamma),
                                          self.rs.simple_coefficients(gamma_prime)))
        both = self.pbw.act_on_verma(sh.element(first), sh.vector(second))
        swapped = self.pbw.act_on_verma(sh.element(second), sh.vector(first))
        triple = self.pbw.act_on_verma(sh.element(second), both)

        w2 = self._spanning_vectors(gamma, eta)
        if self._generic_rank(w2 + [both], weight, xi, eta) != self._generic_rank(w2, weight, xi, eta):
            raise PropertyViolated("θ_γθ_γ' v is not in U(g)θ_γ v")
        if self._generic_rank([both, swapped], weight, xi, eta) != self._generic_rank([both], weight, xi, eta):
            raise PropertyViolated("θ_γ'θ_γ v is not in U(g)θ_γθ_γ' v")
        s, t = self._t_points(0)
        for c in (s, t):
            if self.pbw.evaluate_vector(triple, weight + xi.scale(c)):
                raise PropertyViolated("θ_γ'θ_γθ_γ' v does not vanish")
        return {'w2_contains': True, 'w3_contains': True, 'triple_vanishes': True}

    def strict_kernel_probe(self, weight, gamma, depth: Optional[int] = None,
                            cfg: Optional[DeformationConfig] = None) -> Dict:
        """
        Per η: the specialized kernel of M(λ) → M^γ(λ) against U(g)θ_γ v_λ.

        The kernel dimension is the rank of {e_{-π}θ_γ v} over QQ(T) along
        λ + Tξ, the submodule dimension is the same rank at T = 0.
        """
        weight = self.weight(weight)
        gamma = self.positive_root(gamma)
        self.rs.check_orthogonal_isotropic([gamma])
        self._check_on_hyperplanes(weight, [gamma])
        depth = Config.DEPTH if depth is None else depth
        cfg = cfg or self.choose_deformation(MX, [gamma])
        rows = []
        for eta in self.verma.lattice_points(depth):
            vectors = self._spanning_vectors(gamma, eta)
            kernel = self._generic_rank(vectors, weight, cfg.xi, eta)
            submodule = self._rank_at(vectors, weight, eta) if vectors else 0
            rows.append({
                'eta': list(eta),
                'kernel': kernel,
                'submodule': submodule,
                'strict': kernel > submodule,
            })
        strict = [row['eta'] for row in rows if row['strict']]
        logger.info("Strict kernel check for %s at λ=%s: %d strict weights",
                    self.rs.root_name(gamma), weight.to_dict(), len(strict))
        return {
            'lambda': weight.to_dict(),
            'gamma': self.rs.root_name(gamma),
            'depth': depth,
            'rows': rows,
            'strict': strict,
        }

    # --- two orthogonal isotropic roots ---------------------------------------------------

    def _check_generic(self, weight: Weight, gamma: Root, gamma_prime: Root, depth: int) -> None:
        """
        A(μ) = ∅ and B(μ) = {γ, γ'} for every μ = λ + aγ + bγ' with |a|, |b| ≤ depth.

        Raises:
            NotGenericSample: At the first μ that fails
        """
        expected = {gamma, gamma_prime}
        for a, b in itertools.product(range(-depth, depth + 1), repeat=2):
            mu = weight + gamma.weight.scale(a) + gamma_prime.weight.scale(b)
            a_set, b_set = self.rs.ab_sets(mu)
            if a_set or set(b_set) != expected:
                raise NotGenericSample(
                    f"μ = λ{a:+d}γ{b:+d}γ' is not weakly generic: "
                    f"A = {[self.rs.root_name(r) for r in a_set]}, "
                    f"B = {[self.rs.root_name(r) for r in b_set]}")

    def pig_check(self, weight, gamma, gamma_prime, depth: Optional[int] = None,
                  cfg: Optional[DeformationConfig] = None) -> Dict:
        """
        Σ_i dim M_i(λ) = p_γ(η-γ) + p_{γ'}(η-γ'), valuations ≤ 2 and
        #{valuations ≥ 2} = p_{γ,γ'}(η-γ-γ') for every η up to depth.

        Raises:
            NotGenericSample: If λ is not generic or a θ-product vanishes at λ
        """
        weight = self.weight(weight)
        gamma = self.positive_root(gamma)
        gamma_prime = self.positive_root(gamma_prime)
        self.rs.check_orthogonal_isotropic([gamma, gamma_prime])
        if gamma == gamma_prime:
            raise PreconditionViolated("γ and γ' must be distinct")
        depth = Config.DEPTH if depth is None else depth
        self._check_generic(weight, gamma, gamma_prime, depth)
        first, second = self.shapovalov.products(gamma, gamma_prime)
        if not self.pbw.evaluate_vector(first, weight) or not self.pbw.evaluate_vector(second, weight):
            raise NotGenericSample("A θ-product vanishes at λ")
        cfg = cfg or self.choose_deformation(FILTRATION)

        g, gp = self.rs.simple_coefficients(gamma), self.rs.simple_coefficients(gamma_prime)
        pair = (gamma, gamma_prime)
        rows = []
        for eta in self.verma.lattice_points(depth):
            layers = self.layer_dimensions(weight, cfg, eta)
            expected = self._p(self._minus(eta, g), (gamma,)) + self._p(self._minus(eta, gp), (gamma_prime,))
            deep = sum(1 for v in layers.valuations if v >= 2)
            expected_deep = self._p(self._minus(self._minus(eta, g), gp), pair)
            top = max(layers.valuations, default=0)
            rows.append({
                'eta': list(eta),
                'layers': list(layers.layers),
                'lhs': layers.total,
                'rhs': expected,
                'deep': deep,
                'expected_deep': expected_deep,
                'holds': layers.total == expected and top <= 2 and deep == expected_deep,
            })
        verdict = all(row['holds'] for row in rows)
        logger.info("Two-root check for %s, %s on %s: %s", self.rs.root_name(gamma),
                    self.rs.root_name(gamma_prime), self.rs.label, 'pass' if verdict else 'fail')
        return {
            'lambda': weight.to_dict(),
            'gamma': self.rs.root_name(gamma),
            'gamma_prime': self.rs.root_name(gamma_prime),
            'depth': depth,
            'deformation': cfg.to_dict(),
            'rows': rows,
            'verdict': 'pass' if verdict else 'fail',
        }

    def bad_parameters(self, weight, xi, gamma, gamma_prime) -> Dict:
        return self.shapovalov.bad_parameters(weight, xi, gamma, gamma_prime)

    @staticmethod
    def describe_layers(table: Sequence[JantzenLayers]) -> List[Dict]:
        return [layers.to_dict() for layers in table]
