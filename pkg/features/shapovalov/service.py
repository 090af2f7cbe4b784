"""
Šapovalov element service.

Computes θ_{γ,m} by exact singular-vector solves plus interpolation over the
hyperplane H_{γ,m}, or by the reflection recursion along a reduced word, and
checks the identities these elements satisfy: the defining property, the
degree bound and leading term, θ_γ² = 0 on H_γ, the comparison across odd
reflections, the identities with θ_{α,p} and the proportionality of the two
products for orthogonal isotropic roots.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from core.base_service import BaseService
from features.pbw.service import UElement, VermaVector
from features.shapovalov.repository import ShapovalovRepository
from features.shapovalov.sampling import (
    Hyperplane, RecursionGrid, fit_polynomials, top_part,
)
from features.verma.service import T_RING, VermaService
from shared.config import Config
from shared.exceptions import (
    BoundViolated, DegenerateSample, InterpolationMismatch, LeadingTermMismatch,
    NormalizationImpossible, NotInEvenOrbit, NotIsotropic, NotProportional, NotSimple,
    PreconditionViolated, PropertyViolated, SampleDegeneracy, SquareNonzero,
    VerificationError, ZeroFactorAtSample,
)
from shared.linalg import qq, to_fraction
from shared.models import (
    BorelChain, DegreeReport, Lattice, Method, Partition, Root, ShapovalovElement,
    Side, Weight, WeylWord, fraction_str,
)

logger = logging.getLogger(__name__)

ORDERING = "pbw:height-desc"


class ShapovalovService(BaseService):
    """Šapovalov element service - construction and verification of θ_{γ,m}."""

    def __init__(self, context, repository: Optional[ShapovalovRepository] = None,
                 seed: Optional[int] = None):
        super().__init__(context)
        self.verma = VermaService(context)
        self.repository = repository
        self.seed = Config.SEED if seed is None else seed
        self._elements: Dict[Tuple[Root, int, Method], ShapovalovElement] = {}

    # --- helpers ---------------------------------------------------------------

    def hyperplane(self, gamma: Root, m: int = 1) -> Hyperplane:
        return Hyperplane(self.rs, self.pbw, gamma, m)

    def eta(self, gamma: Root, m: int = 1) -> Lattice:
        return tuple(m * c for c in self.rs.simple_coefficients(gamma))

    def root_partition(self, gamma: Root, m: int = 1) -> Partition:
        """mπ^γ: exponent m on γ itself."""
        pi = [0] * self.pbw.n
        pi[self.pbw.negative_letter(gamma)] = m
        return tuple(pi)

    def simple_partition(self, gamma: Root, m: int = 1) -> Partition:
        """
        π⁰: the partition of mγ supported on simple roots.

        Raises:
            PreconditionViolated: If it would use an isotropic simple root twice
        """
        pi = [0] * self.pbw.n
        for simple, c in zip(self.rs.simple, self.eta(gamma, m)):
            if c and simple.isotropic and c > 1:
                raise PreconditionViolated(
                    f"{m}({self.rs.root_name(gamma)}) has no all-simple partition")
            if c:
                pi[self.pbw.negative_letter(simple)] = c
        return tuple(pi)

    def _check_pair(self, gamma: Root, m: int) -> None:
        if m < 1:
            raise PreconditionViolated("m must be a positive integer")
        if gamma.isotropic and m != 1:
            raise PreconditionViolated(f"m must be 1 for the isotropic root {self.rs.root_name(gamma)}")

    def ordering_tag(self, hyperplane: Hyperplane) -> str:
        return f"{ORDERING};eliminate:{hyperplane.eliminated_name}"

    def element(self, theta: ShapovalovElement) -> UElement:
        return UElement(self.pbw, {(pi, ()): c for pi, c in theta.coeffs.items()})

    def vector(self, theta: ShapovalovElement) -> VermaVector:
        """θ v_λ with λ symbolic; the PBW coefficients are the H_π themselves."""
        return dict(theta.coeffs)

    def weyl_data(self, gamma: Root, m: int = 1) -> Optional[Dict]:
        try:
            beta, word = self.rs.find_weyl_expression(gamma)
        except NotInEvenOrbit:
            return None
        steps = self.rs.n_set_and_exponents(word, beta)
        return {
            'beta': self.rs.root_name(beta),
            'word': self.rs.word_name(word),
            'letters': [self.rs.simple_names[k] for k in word.letters],
            'exponents': [[self.rs.root_name(a), fraction_str(m * q)] for a, q in steps],
        }

    # --- construction ----------------------------------------------------------

    def compute_shapovalov(self, gamma: Union[str, Root], m: int = 1,
                           method: Union[str, Method] = Method.SOLVE_INTERPOLATE) -> ShapovalovElement:
        """
        Compute θ_{γ,m}, reduced modulo the hyperplane ideal.

        Args:
            gamma: Positive root
            m: Multiplicity, 1 for isotropic roots
            method: solve_interpolate or recursion

        Returns:
            ShapovalovElement with coeffs[π⁰] = 1

        Raises:
            SampleDegeneracy: If the grid never determines the interpolant
            NotInEvenOrbit: For recursion when γ is not W_even-conjugate to a simple root
            InterpolationMismatch: If the interpolant fails on the verification samples
        """
        gamma = self.positive_root(gamma)
        method = Method(method)
        self._check_pair(gamma, m)
        key = (gamma, m, method)
        if key in self._elements:
            return self._elements[key]
        hp = self.hyperplane(gamma, m)
        ordering = self.ordering_tag(hp)

        cached = self._load(gamma, m, ordering, method)
        if cached is not None:
            self._elements[key] = cached
            return cached

        pi0 = self.simple_partition(gamma, m)
        if gamma in self.rs.simple:
            coeffs = {self.root_partition(gamma, m): self.pbw.ring.one}
        elif method is Method.RECURSION:
            coeffs = self._recursion(gamma, m, hp, pi0)
        else:
            coeffs = self._solve_interpolate(gamma, m, hp, pi0)
        if coeffs.get(pi0) != self.pbw.ring.one:
            raise NormalizationImpossible(f"Coefficient of π⁰ is {coeffs.get(pi0)}")

        theta = ShapovalovElement(
            algebra=self.rs.label,
            borel=self.context.borel_label,
            gamma=gamma,
            m=m,
            coeffs=coeffs,
            eliminated=hp.eliminated,
            ordering=ordering,
            method=method,
            weyl_data=self.weyl_data(gamma, m),
        )
        logger.info("Computed θ(%s, %d) on %s with %d terms by %s",
                    self.rs.root_name(gamma), m, self.rs.label, len(coeffs), method.value)
        if self.repository is not None:
            self.repository.save(theta)
        self._elements[key] = theta
        return theta

    def _load(self, gamma: Root, m: int, ordering: str, method: Method) -> Optional[ShapovalovElement]:
        if self.repository is None:
            return None
        cached = self.repository.find(self.rs.label, self.context.borel_label, gamma, m, ordering, method)
        if cached is None:
            return None
        try:
            self.verify_defining_property(cached)
        except VerificationError as e:
            logger.warning("Discarding cached θ(%s, %d): %s", self.rs.root_name(gamma), m, e.message)
            self.repository.delete(self.repository.key_for(
                cached.algebra, cached.borel, gamma, m, ordering, method))
            return None
        logger.debug("Cache hit for θ(%s, %d)", self.rs.root_name(gamma), m)
        return cached

    def _normalized_singular(self, weight: Weight, eta: Lattice, pi0: Partition) -> Optional[Dict]:
        vectors = self.verma.singular_vectors(weight, eta)
        if len(vectors) != 1:
            return None
        lead = vectors[0].get(pi0)
        if not lead:
            return None
        return {pi: c / lead for pi, c in vectors[0].items()}

    def _solve_interpolate(self, gamma: Root, m: int, hp: Hyperplane, pi0: Partition) -> Dict:
        eta = self.eta(gamma, m)
        keys = self.verma.partitions(eta)
        degree = m * self.rs.height(gamma) - 1
        per_axis = 1 + m * self.rs.height(gamma)
        solved: Dict[Weight, Optional[Dict]] = {}
        for attempt in range(Config.MAX_RESAMPLE + 1):
            samples = []
            for weight in hp.grid(per_axis + attempt, self.seed):
                if not hp.is_generic(weight):
                    continue
                if weight not in solved:
                    solved[weight] = self._normalized_singular(weight, eta, pi0)
                if solved[weight] is not None:
                    samples.append((weight, solved[weight]))
            logger.debug("θ(%s, %d): %d usable samples on grid %d",
                          self.rs.root_name(gamma), m, len(samples), per_axis + attempt)
            fitted = fit_polynomials(hp, samples, keys, degree)
            if fitted is None:
                continue
            checks = hp.generic_points(Config.VERIFY_SAMPLES, seed=self.seed + 1, start=per_axis + attempt)
            for weight in checks:
                expected = self._normalized_singular(weight, eta, pi0)
                if expected is None:
                    continue
                self._compare(fitted, expected, weight, keys)
            return fitted
        raise SampleDegeneracy(
            f"No unisolvent sample set for θ({self.rs.root_name(gamma)}, {m}) "
            f"after {Config.MAX_RESAMPLE} extensions")

    def _compare(self, fitted: Dict, expected: Dict, weight: Weight, keys) -> None:
        for pi in keys:
            poly = fitted.get(pi)
            value = to_fraction(self.pbw.evaluate_poly(poly, weight)) if poly else Fraction(0)
            if value != expected.get(pi, Fraction(0)):
                raise InterpolationMismatch(
                    f"Interpolant disagrees at λ={weight.to_dict()} on {self.verma.describe_partition(pi)}")

    def recursion_at(self, weight: Weight, gamma: Root, m: int = 1) -> Dict[Partition, Fraction]:
        """
        θ_{γ,m}(λ) from e^m_{-β} by one right division per letter of w.

        With μ_j the dot-reflected weights along w = s_{a1}...s_{al}, each step
        solves e^{p+mq}_{-α} θ_j(μ_j) = θ_{j-1}(μ_{j-1}) e^p_{-α} for
        p = (μ_j+ρ, α^∨), q = (γ_{j-1}, α^∨).

        Raises:
            PreconditionViolated: If some p or q is not a positive integer
            NotDivisible: If a right division fails
        """
        rs, pbw = self.rs, self.pbw
        beta, word = rs.find_weyl_expression(gamma)
        mus = [weight]
        for slot in word.letters:
            mus.append(rs.dot_reflect(mus[-1], rs.simple[slot]))
        theta = pbw.lowering(beta, m)
        for j in range(word.length, 0, -1):
            alpha = rs.simple[word.letters[j - 1]]
            p = rs.coroot_pairing(mus[j] + rs.rho, alpha)
            previous = rs.apply_inverse(WeylWord(word.letters[:j - 1]), gamma.coords)
            q = rs.coroot_pairing(Weight(previous), alpha)
            if p <= 0 or q <= 0 or p.denominator != 1 or (m * q).denominator != 1:
                raise PreconditionViolated(
                    f"Reflection step at {rs.root_name(alpha)} needs positive integers, got p={p}, q={q}")
            theta = pbw.right_divide(pbw.lowering(alpha, int(p + m * q)) * theta, alpha, int(p))
        values = {}
        for (neg, _), coeff in theta.terms.items():
            values[neg] = to_fraction(coeff.LC)
        return values

    def _recursion(self, gamma: Root, m: int, hp: Hyperplane, pi0: Partition) -> Dict:
        beta, word = self.rs.find_weyl_expression(gamma)
        n_set = [root for root, _ in self.rs.n_set_and_exponents(word, beta)]
        grid = RecursionGrid(hp, n_set)
        keys = self.verma.partitions(self.eta(gamma, m))
        degree = m * self.rs.height(gamma) - 1
        per_axis = 1 + m * self.rs.height(gamma)

        def normalized(weight: Weight) -> Dict:
            values = self.recursion_at(weight, gamma, m)
            lead = values.get(pi0)
            if not lead:
                raise NormalizationImpossible(f"Recursion gives θ with zero π⁰ coefficient at {weight.to_dict()}")
            return {pi: c / lead for pi, c in values.items()}

        for attempt in range(Config.MAX_RESAMPLE + 1):
            samples = [(w, normalized(w)) for w in grid.grid(per_axis + attempt, self.seed)]
            fitted = fit_polynomials(hp, samples, keys, degree)
            if fitted is None:
                continue
            checks = list(grid.grid(2, self.seed + 1, start=per_axis + attempt + 1))
            for weight in checks[:Config.VERIFY_SAMPLES]:
                self._compare(fitted, normalized(weight), weight, keys)
            return fitted
        raise SampleDegeneracy(f"Recursion grid for {self.rs.root_name(gamma)} is not unisolvent")

    def canonical(self, theta: ShapovalovElement, coeffs: Dict[Partition, PolyElement]) -> Dict:
        """Reduce arbitrary representatives modulo the hyperplane ideal of θ."""
        return self.hyperplane(theta.gamma, theta.m).reduce_vector(coeffs)

    def methods_agree(self, gamma, m: int = 1) -> bool:
        first = self.compute_shapovalov(gamma, m, Method.SOLVE_INTERPOLATE)
        second = self.compute_shapovalov(gamma, m, Method.RECURSION)
        return first.coeffs == second.coeffs

    # --- verification ----------------------------------------------------------

    def verify_defining_property(self, theta: ShapovalovElement) -> Dict:
        """
        Check e_α θ v_λ ≡ 0 modulo the hyperplane for every simple α, and θ v_λ ≠ 0.

        Returns:
            Report with, per simple root, the quotients of the raw residues by
            the hyperplane polynomial

        Raises:
            PropertyViolated: With the offending α and residue
        """
        hp = self.hyperplane(theta.gamma, theta.m)
        base = self.vector(theta)
        if not hp.reduce_vector(base):
            raise PropertyViolated("θ v_λ vanishes on the hyperplane")
        raising = {}
        for name, simple in zip(self.rs.simple_names, self.rs.simple):
            image = self.pbw.apply_letter(self.pbw.positive_letter(simple), base)
            entries = []
            for pi, poly in sorted(image.items(), reverse=True):
                residue = hp.reduce(poly)
                if residue:
                    raise PropertyViolated(
                        f"e_{name} θ v_λ has residue {residue} at {self.verma.describe_partition(pi)}")
                entries.append({
                    'partition': self.verma.describe_partition(pi),
                    'quotient': str(poly.exquo(hp.polynomial)),
                })
            raising[name] = entries
        return {
            'gamma': self.rs.root_name(theta.gamma),
            'm': theta.m,
            'hyperplane': str(hp.polynomial),
            'verified': True,
            'raising': raising,
        }

    def degree_report(self, theta: ShapovalovElement) -> DegreeReport:
        """
        Degree bound, uniqueness of the top-degree coefficient and its leading term.

        Raises:
            BoundViolated: If |π| + deg H_π exceeds m·hgt γ or the maximum is not unique at mπ^γ
            LeadingTermMismatch: If the top part of H_{mπ^γ} is not a multiple of Π h_α^{mq}
        """
        gamma, m = theta.gamma, theta.m
        hp = self.hyperplane(gamma, m)
        nvars = len(self.pbw.H)
        bound = m * self.rs.height(gamma)
        degrees = {}
        for pi, poly in theta.coeffs.items():
            degree, _ = top_part(poly, nvars)
            if sum(pi) + degree > bound:
                raise BoundViolated(
                    f"|π| + deg H_π = {sum(pi) + degree} > {bound} at {self.verma.describe_partition(pi)}")
            degrees[pi] = degree
        top = self.root_partition(gamma, m)
        d = degrees.get(top)
        if d is None:
            raise BoundViolated("θ has no term at mπ^γ")
        others = [pi for pi, deg in degrees.items() if deg >= d and pi != top]
        if others:
            raise BoundViolated(f"Degree {d} is also attained at {self.verma.describe_partition(others[0])}")

        exponents: Dict[str, int] = {}
        scalar = Fraction(1)
        data = self.weyl_data(gamma, m)
        if data is not None:
            beta, word = self.rs.find_weyl_expression(gamma)
            expected = self.pbw.ring.one
            for alpha, q in self.rs.n_set_and_exponents(word, beta):
                power = int(m * q)
                exponents[self.rs.root_name(alpha)] = power
                expected *= self.pbw.coroot_poly(alpha) ** power
            expected_degree, expected_top = top_part(hp.reduce(expected), nvars)
            actual_degree, actual_top = top_part(theta.coeffs[top], nvars)
            if expected_degree != actual_degree:
                raise LeadingTermMismatch(
                    f"deg H_(mπ^γ) = {actual_degree}, expected {expected_degree}")
            ratio = actual_top.LC / expected_top.LC
            if actual_top != expected_top * ratio:
                raise LeadingTermMismatch(f"Leading part {actual_top} is not a multiple of {expected_top}")
            scalar = to_fraction(ratio)
        return DegreeReport(degrees, d, top, exponents, scalar)

    def square_check(self, gamma) -> bool:
        """
        θ_γ(λ-γ) θ_γ(λ) v_λ vanishes identically on H_γ.

        Raises:
            NotIsotropic: If γ is not isotropic
            SquareNonzero: If the product survives reduction
        """
        gamma = self.positive_root(gamma)
        if not gamma.isotropic:
            raise NotIsotropic(f"{self.rs.root_name(gamma)} is not isotropic")
        theta = self.compute_shapovalov(gamma, 1)
        hp = self.hyperplane(gamma, 1)
        product = self.pbw.act_on_verma(self.element(theta), self.vector(theta))
        residue = hp.reduce_vector(product)
        if residue:
            pi, poly = next(iter(residue.items()))
            raise SquareNonzero(f"θ_γ² v_λ has coefficient {poly} at {self.verma.describe_partition(pi)}")
        return True

    def borel_chain_compare(self, gamma, chain: Optional[BorelChain] = None,
                            samples: Optional[Sequence[Weight]] = None, count: int = 20) -> Dict:
        """
        Compare e_{α1}...e_{αr} e_{-γ} e_{-αr}...e_{-α1} v_λ with Π_{i∈F}(λ+ρ, α_i) θ_γ v_λ.

        The constant c is fitted on samples and then checked symbolically on H_γ.

        Raises:
            NotSimple: If γ is not simple after the chain
            ZeroFactorAtSample: If every sample meets a zero of the product
            NotProportional: If no single c relates the two sides
        """
        gamma = self.positive_root(gamma)
        if not gamma.isotropic:
            raise NotIsotropic(f"{self.rs.root_name(gamma)} is not isotropic")
        if chain is None:
            chain = self.rs.chain_to_simple(gamma)
        if gamma not in chain.final_basis:
            raise NotSimple(f"{self.rs.root_name(gamma)} is not simple after the chain")
        pbw = self.pbw
        lhs: VermaVector = {(0,) * pbw.n: pbw.ring.one}
        for alpha in chain.steps:
            lhs = pbw.apply_letter(pbw.negative_letter(alpha), lhs)
        lhs = pbw.apply_letter(pbw.negative_letter(gamma), lhs)
        for alpha in reversed(chain.steps):
            lhs = pbw.apply_letter(pbw.positive_letter(alpha), lhs)

        orthogonal = [i for i, alpha in enumerate(chain.steps) if self.rs.pairing(gamma, alpha) == 0]
        factor = pbw.ring.one
        for i in orthogonal:
            factor *= pbw.shifted_form_poly(chain.steps[i])
        theta = self.compute_shapovalov(gamma, 1)
        rhs = self.vector(theta)
        hp = self.hyperplane(gamma, 1)

        points = list(samples) if samples is not None else hp.generic_points(count, seed=self.seed + 2)
        constants = set()
        used = 0
        for weight in points:
            if not hp.contains(weight):
                raise PreconditionViolated(f"Sample {weight.to_dict()} is not on H_γ")
            scale = to_fraction(pbw.evaluate_poly(factor, weight))
            if not scale:
                logger.debug("Skipping sample with vanishing factor")
                continue
            left = pbw.evaluate_vector(lhs, weight)
            right = pbw.evaluate_vector(rhs, weight)
            constants.add(self._ratio(left, right, scale))
            used += 1
        if not used:
            raise ZeroFactorAtSample("Π(λ+ρ, α_i) vanished at every sample")
        if len(constants) != 1:
            raise NotProportional(f"Samples give different constants {sorted(constants)}")
        c = constants.pop()
        if c == 0:
            raise NotProportional("The left-hand side vanishes on H_γ")
        scaled = factor * qq(c)
        zero = pbw.ring.zero
        difference = {k: lhs.get(k, zero) - scaled * rhs.get(k, zero) for k in set(lhs) | set(rhs)}
        verified = not hp.reduce_vector(difference)
        if not verified:
            raise NotProportional("Sampled constant does not satisfy the identity on all of H_γ")
        return {
            'gamma': self.rs.root_name(gamma),
            'chain': [self.rs.root_name(a) for a in chain.steps],
            'F': [i + 1 for i in orthogonal],
            'c': fraction_str(c),
            'samples': used,
            'verified': verified,
        }

    @staticmethod
    def _ratio(left: Dict, right: Dict, scale: Fraction = Fraction(1)) -> Fraction:
        """c with left = c·scale·right, or NotProportional."""
        if not right:
            raise DegenerateSample("θ v_λ vanishes at the sample")
        key = next(iter(sorted(right)))
        c = left.get(key, Fraction(0)) / (scale * right[key])
        keys = set(left) | set(right)
        for k in keys:
            if left.get(k, Fraction(0)) != c * scale * right.get(k, Fraction(0)):
                raise NotProportional("Vectors are not proportional")
        return c

    def man_identity(self, gamma, alpha, p: int, weight: Weight, side: Union[str, Side]) -> bool:
        """
        pin: θ_γ θ_{α,p} v_λ = θ_{α,p+1} θ_{γ'} v_λ;  pun: θ_{γ'} θ_{α,p} v_λ = θ_{α,p-1} θ_γ v_λ.

        Here γ' = s_α γ and θ_{α,0} = 1.

        Raises:
            PreconditionViolated: If λ, α, p do not satisfy the side's hypotheses
        """
        side = Side(side)
        gamma = self.positive_root(gamma)
        alpha = self.positive_root(alpha)
        weight = self.weight(weight)
        rs = self.rs
        if not gamma.isotropic:
            raise PreconditionViolated(f"{rs.root_name(gamma)} is not isotropic")
        if alpha.odd:
            raise PreconditionViolated(f"{rs.root_name(alpha)} is not even")
        if rs.coroot_pairing(gamma.weight, alpha) != 1:
            raise PreconditionViolated("The identities need (γ, α^∨) = 1")
        gamma_prime = rs.root(rs.reflect(gamma.coords, alpha))
        if not rs.is_positive(gamma_prime):
            raise PreconditionViolated(f"s_α γ = {rs.root_name(gamma_prime)} is not positive")
        if rs.shifted_pairing(weight, alpha) != p:
            raise PreconditionViolated(f"(λ+ρ, α^∨) = {rs.shifted_pairing(weight, alpha)}, not {p}")
        if side is Side.PIN:
            if p < 0 or rs.shifted_pairing(weight, gamma_prime) != 0:
                raise PreconditionViolated("pin needs p ≥ 0 and (λ+ρ, γ') = 0")
            left = self._apply_chain([(gamma, 1), (alpha, p)], weight)
            right = self._apply_chain([(alpha, p + 1), (gamma_prime, 1)], weight)
        else:
            if p < 1 or rs.shifted_pairing(weight, gamma) != 0:
                raise PreconditionViolated("pun needs p ≥ 1 and (λ+ρ, γ) = 0")
            left = self._apply_chain([(gamma_prime, 1), (alpha, p)], weight)
            right = self._apply_chain([(alpha, p - 1), (gamma, 1)], weight)
        logger.info("%s identity for %s, α=%s, p=%d: %s", side.value, rs.root_name(gamma),
                    rs.root_name(alpha), p, left == right)
        return left == right

    def _apply_chain(self, factors: Sequence[Tuple[Root, int]], weight: Weight) -> Dict[Partition, Fraction]:
        """Π θ_{root,k} v_λ for factors listed left to right, evaluated at λ."""
        vector: VermaVector = {(0,) * self.pbw.n: self.pbw.ring.one}
        for root, k in reversed(factors):
            if k == 0:
                continue
            theta = self.compute_shapovalov(root, k)
            vector = self.pbw.act_on_verma(self.element(theta), vector)
        return self.pbw.evaluate_vector(vector, weight)

    def products(self, gamma: Root, gamma_prime: Root) -> Tuple[VermaVector, VermaVector]:
        first = self.compute_shapovalov(gamma, 1)
        second = self.compute_shapovalov(gamma_prime, 1)
        a = self.pbw.act_on_verma(self.element(second), self.vector(first))
        b = self.pbw.act_on_verma(self.element(first), self.vector(second))
        return a, b

    def _check_kt(self, gamma, gamma_prime) -> Tuple[Root, Root]:
        gamma = self.positive_root(gamma)
        gamma_prime = self.positive_root(gamma_prime)
        self.rs.check_orthogonal_isotropic([gamma, gamma_prime])
        if gamma == gamma_prime:
            raise PreconditionViolated("γ and γ' must be distinct")
        return gamma, gamma_prime

    def kt_report(self, gamma, gamma_prime, weight) -> Dict:
        """
        p(λ) with θ_{γ'}(λ-γ)θ_γ(λ)v_λ = p(λ)·θ_γ(λ-γ')θ_{γ'}(λ)v_λ, by two routes.

        Raises:
            PreconditionViolated: If λ is not on both hyperplanes
            DegenerateSample: If either product vanishes at λ
            NotProportional: If the two vectors are not proportional
        """
        gamma, gamma_prime = self._check_kt(gamma, gamma_prime)
        weight = self.weight(weight)
        for root in (gamma, gamma_prime):
            if not self.rs.on_hyperplane(weight, root, 1):
                raise PreconditionViolated(f"λ is not on H_{self.rs.root_name(root)}")
        a, b = self.products(gamma, gamma_prime)
        left = self.pbw.evaluate_vector(a, weight)
        right = self.pbw.evaluate_vector(b, weight)
        if not left or not right:
            raise DegenerateSample("A θ-product vanishes at λ; choose another point on the line")
        ratio = self._ratio(left, right)
        pair = [0] * self.pbw.n
        pair[self.pbw.negative_letter(gamma)] = 1
        pair[self.pbw.negative_letter(gamma_prime)] = 1
        pair = tuple(pair)
        coefficient_ratio = None
        if right.get(pair):
            coefficient_ratio = left.get(pair, Fraction(0)) / right[pair]
            if coefficient_ratio != ratio:
                raise NotProportional("Coefficient of e_{-γ}e_{-γ'} gives a different ratio")
        return {
            'gamma': self.rs.root_name(gamma),
            'gamma_prime': self.rs.root_name(gamma_prime),
            'lambda': weight.to_dict(),
            'ratio': fraction_str(ratio),
            'coefficient_ratio': fraction_str(coefficient_ratio) if coefficient_ratio is not None else None,
        }

    def kt_proportionality(self, gamma, gamma_prime, weight) -> Fraction:
        return Fraction(self.kt_report(gamma, gamma_prime, weight)['ratio'])

    def bad_parameters(self, weight, xi, gamma, gamma_prime) -> Dict:
        """
        Values c where a θ-product vanishes at λ + cξ.

        ξ must be orthogonal to γ and γ' so the whole line stays on both hyperplanes.
        """
        gamma, gamma_prime = self._check_kt(gamma, gamma_prime)
        weight, xi = self.weight(weight), self.weight(xi)
        if self.rs.pairing(xi, gamma) or self.rs.pairing(xi, gamma_prime):
            raise PreconditionViolated("ξ must be orthogonal to γ and γ'")
        a, b = self.products(gamma, gamma_prime)
        return {
            'first': [fraction_str(c) for c in self._line_roots(a, weight, xi)],
            'second': [fraction_str(c) for c in self._line_roots(b, weight, xi)],
        }

    def _line_roots(self, vector: VermaVector, weight: Weight, xi: Weight) -> List[Fraction]:
        common = T_RING.zero
        for poly in vector.values():
            common = common.gcd(self.verma.deform(poly, weight, xi))
        if not common:
            return []
        roots = []
        _, factors = common.factor_list()
        for factor, _ in factors:
            if factor.degree() == 1:
                terms = dict(factor.terms())
                roots.append(-to_fraction(terms.get((0,), 0)) / to_fraction(terms[(1,)]))
        return sorted(roots)

    def oracle_check(self, gamma, m: int = 1, count: int = 10) -> Dict:
        """Compare θ(λ)v_λ with the brute-force singular vectors at generic λ ∈ H_{γ,m}."""
        theta = self.compute_shapovalov(gamma, m)
        hp = self.hyperplane(theta.gamma, m)
        eta = self.eta(theta.gamma, m)
        compared = 0
        agree = True
        for weight in hp.generic_points(count, seed=self.seed + 3):
            vectors = self.verma.singular_vectors(weight, eta)
            if len(vectors) != 1:
                continue
            compared += 1
            ours = self.pbw.evaluate_vector(self.vector(theta), weight)
            try:
                self._ratio(vectors[0], ours)
            except (NotProportional, DegenerateSample):
                agree = False
        return {
            'gamma': self.rs.root_name(theta.gamma),
            'm': m,
            'samples': count,
            'compared': compared,
            'agree': agree and compared > 0,
        }

    # --- presentation ----------------------------------------------------------

    def describe(self, theta: ShapovalovElement) -> Dict:
        data = theta.to_dict()
        data['gamma_name'] = self.rs.root_name(theta.gamma)
        data['eliminated_name'] = self.rs.coordinate_names[theta.eliminated]
        data['terms'] = [
            {'partition': self.verma.describe_partition(pi), 'coeff': str(c)}
            for pi, c in sorted(theta.coeffs.items(), reverse=True)
        ]
        return data
