"""
Root data for the preset algebra families.

Roots and weights are stored in ε|δ coordinates, where the invariant form
is diagonal: (ε_i, ε_j) = δ_ij, (δ_i, δ_j) = -δ_ij. Simple roots keep their
slot under odd reflections, and slot k is named by the k-th letter (a, b, c, ...).
"""
import itertools
import logging
import re
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from shared.exceptions import (
    DimensionMismatch, IsotropicCoroot, NonReducedWord, NotFoundError, NotInEvenOrbit,
    NotIsotropic, NotOrthogonalIsotropic, NotSimple, OddNonIsotropicRoot, UnsupportedFamily,
    ValidationError,
)
from shared.linalg import solve_particular
from shared.models import (
    AlgebraSpec, BorelChain, BorelKind, Family, Lattice, Root, Weight, WeylWord, fraction_str,
)

logger = logging.getLogger(__name__)

Coords = Tuple[Fraction, ...]

ALGEBRA_PATTERN = re.compile(
    r'^(?P<name>sl|gl|osp)\((?P<a>\d+)(?:\|(?P<b>\d+))?\)'
    r'(?:@(?P<borel>distinguished|anti|chain\[(?P<chain>[\d,]*)\]))?$'
)
ROOT_TERM = re.compile(r'([+-]?)(\d*(?:/\d+)?)([a-z])(\d*)')


def parse_algebra(text: str) -> AlgebraSpec:
    """Parse "sl(N)", "gl(M|N)", "sl(M|N)", "osp(2|2N)" with an optional Borel suffix."""
    match = ALGEBRA_PATTERN.match(text.replace(' ', ''))
    if not match:
        raise UnsupportedFamily(f"Unrecognized algebra: {text!r}")

    name, a, b = match.group('name'), int(match.group('a')), match.group('b')
    if name == 'osp':
        if b is None or int(b) % 2 or int(b) < 2:
            raise UnsupportedFamily(f"Unsupported orthosymplectic algebra: {text!r}")
        if a % 2:
            raise OddNonIsotropicRoot(f"{text!r} has odd non-isotropic roots")
        if a != 2:
            raise UnsupportedFamily(f"Only osp(2|2N) is supported, got {text!r}")
        family, ranks = Family.OSP_2_2N, (int(b) // 2,)
    elif b is None:
        if name != 'sl' or a < 2:
            raise UnsupportedFamily(f"Unsupported algebra: {text!r}")
        family, ranks = Family.SL_N, (a,)
    else:
        if a < 1 or int(b) < 1:
            raise UnsupportedFamily(f"Ranks must be positive: {text!r}")
        family = Family.GL_MN if name == 'gl' else Family.SL_MN
        ranks = (a, int(b))

    borel = match.group('borel')
    if borel is None or borel == 'distinguished':
        return AlgebraSpec(family, ranks)
    if borel == 'anti':
        return AlgebraSpec(family, ranks, BorelKind.ANTI_DISTINGUISHED)
    steps = tuple(int(i) for i in match.group('chain').split(',') if i)
    return AlgebraSpec(family, ranks, BorelKind.CHAIN, steps)


def _add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Coords:
    return tuple(a + b for a, b in zip(x, y))


def _scale(c, x: Sequence[Fraction]) -> Coords:
    return tuple(Fraction(c) * a for a in x)


class RootSystem:
    """
    Positive system, simple basis, ρ and the invariant form of a preset algebra.

    All values are immutable after construction; the only mutable state is a
    memo of simple-root expansions.
    """

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.signs, self.coordinate_names = self._coordinates(spec)
        self.rank = len(self.signs)
        self._table: Dict[Coords, Root] = {}
        for coords, odd in self._enumerate_roots(spec):
            isotropic = self.pairing(coords, coords) == 0
            if odd and not isotropic:
                raise OddNonIsotropicRoot(f"{spec.label} has the odd root {coords}")
            self._table[coords] = Root(coords, odd, isotropic)
        if spec.family is Family.SL_MN and spec.ranks[0] == spec.ranks[1]:
            logger.info("%s realized as gl(%d|%d)", spec.label, *spec.ranks)

        functional = [Fraction(self.rank - k) for k in range(self.rank)]
        self.distinguished_positive = frozenset(
            c for c in self._table if sum(f * x for f, x in zip(functional, c)) > 0)
        basis = sorted(
            (self._table[c] for c in self._indecomposable(self.distinguished_positive)),
            key=lambda r: next(i for i, x in enumerate(r.coords) if x))
        self.distinguished_basis: Tuple[Root, ...] = tuple(basis)

        slots = self._borel_slots(spec)
        self.chain = self.chain_from_slots(self.distinguished_basis, slots)
        self.simple: Tuple[Root, ...] = self.chain.final_basis
        positive = set(self.distinguished_positive)
        for step in self.chain.steps:
            positive.discard(step.coords)
            positive.add((-step).coords)
        self._positive = frozenset(positive)
        self._expansions: Dict[Coords, Lattice] = {}

        self.positive_roots: List[Root] = sorted(
            (self._table[c] for c in self._positive),
            key=lambda r: (-self.height(r), r.coords))
        even = [r for r in self.positive_roots if not r.odd]
        odd = [r for r in self.positive_roots if r.odd]
        self.rho0 = Weight(_scale(Fraction(1, 2), self._sum(r.coords for r in even)))
        self.rho1 = Weight(_scale(Fraction(1, 2), self._sum(r.coords for r in odd)))
        self.rho = self.rho0 - self.rho1
        logger.debug("Built %s with %d positive roots", self.label, len(self.positive_roots))

    # --- construction helpers ---------------------------------------------

    @staticmethod
    def _coordinates(spec: AlgebraSpec) -> Tuple[List[int], List[str]]:
        if spec.family is Family.SL_N:
            n = spec.ranks[0]
            return [1] * n, [f"e{i + 1}" for i in range(n)]
        if spec.family is Family.OSP_2_2N:
            n = spec.ranks[0]
            return [1] + [-1] * n, ["e1"] + [f"d{i + 1}" for i in range(n)]
        m, n = spec.ranks
        return [1] * m + [-1] * n, [f"e{i + 1}" for i in range(m)] + [f"d{j + 1}" for j in range(n)]

    @staticmethod
    def _enumerate_roots(spec: AlgebraSpec) -> Iterable[Tuple[Coords, bool]]:
        if spec.family is Family.OSP_2_2N:
            n = spec.ranks[0]
            r = n + 1

            def vec(entries):
                out = [Fraction(0)] * r
                for index, value in entries:
                    out[index] += value
                return tuple(out)

            for i in range(1, r):
                for s in (1, -1):
                    yield vec([(i, 2 * s)]), False
                    for t in (1, -1):
                        yield vec([(0, t), (i, s)]), True
                for j in range(i + 1, r):
                    for s, t in itertools.product((1, -1), repeat=2):
                        yield vec([(i, s), (j, t)]), False
            return

        m = spec.ranks[0]
        r = m if spec.family is Family.SL_N else m + spec.ranks[1]
        for i, j in itertools.permutations(range(r), 2):
            coords = [Fraction(0)] * r
            coords[i], coords[j] = Fraction(1), Fraction(-1)
            yield tuple(coords), (i < m) != (j < m)

    @staticmethod
    def _indecomposable(positive: frozenset) -> List[Coords]:
        sums = {_add(x, y) for x, y in itertools.combinations(positive, 2)}
        return [c for c in positive if c not in sums]

    def _borel_slots(self, spec: AlgebraSpec) -> List[int]:
        if spec.borel is BorelKind.CHAIN:
            return [i - 1 for i in spec.chain]
        if spec.borel is BorelKind.DISTINGUISHED:
            return []
        slots = []
        basis = self.distinguished_basis
        while True:
            slot = next((k for k, root in enumerate(basis)
                         if root.isotropic and root.coords in self.distinguished_positive), None)
            if slot is None:
                return slots
            slots.append(slot)
            basis = self.odd_reflection(basis, basis[slot])

    def _sum(self, vectors: Iterable[Sequence[Fraction]]) -> Coords:
        total = tuple(Fraction(0) for _ in range(self.rank))
        for v in vectors:
            total = _add(total, v)
        return total

    # --- naming ------------------------------------------------------------

    @property
    def label(self) -> str:
        return self.spec.label

    @property
    def simple_names(self) -> List[str]:
        return [chr(ord('a') + k) for k in range(len(self.simple))]

    def format_lattice(self, eta: Sequence[int]) -> str:
        terms = []
        for name, c in zip(self.simple_names, eta):
            if not c:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = '' if abs(c) == 1 else fraction_str(abs(c))
            terms.append(f"{sign}{magnitude}{name}")
        text = ''.join(terms).lstrip('+')
        return text or '0'

    def root_name(self, root: Root) -> str:
        return self.format_lattice(self.simple_coefficients(root))

    def parse_root(self, text: str) -> Root:
        """Parse "a+b", "2b+c", "-a" (simple letters) or "e1-d2" (coordinates)."""
        coords = self.parse_vector(text)
        return self.root(coords)

    def parse_vector(self, text: str) -> Coords:
        compact = text.replace(' ', '')
        if not compact or ''.join(m.group(0) for m in ROOT_TERM.finditer(compact)) != compact:
            raise ValidationError(f"Malformed root expression: {text!r}")
        total = tuple(Fraction(0) for _ in range(self.rank))
        for sign, coeff, letter, index in ROOT_TERM.findall(compact):
            value = Fraction(coeff) if coeff else Fraction(1)
            if sign == '-':
                value = -value
            if index:
                name = f"{letter}{index}"
                if name not in self.coordinate_names:
                    raise NotFoundError(f"Unknown coordinate {name!r} for {self.label}")
                unit = [Fraction(0)] * self.rank
                unit[self.coordinate_names.index(name)] = Fraction(1)
                total = _add(total, _scale(value, unit))
            else:
                slot = ord(letter) - ord('a')
                if slot >= len(self.simple):
                    raise NotFoundError(f"Unknown simple root {letter!r} for {self.label}")
                total = _add(total, _scale(value, self.simple[slot].coords))
        return total

    def parse_weight(self, text: str) -> Weight:
        """
        Parse a weight.

        Accepted forms, comma separated:
            ``e1=1/2,d1=3``          coordinates in the ε|δ basis (missing ones are 0)
            ``h_a=1,h_a+b=0``        values of (λ, root); free coordinates set to 0
            ``pairings:a=1,b=0``     values of (λ+ρ, α_i^∨), or (λ+ρ, α_i) for isotropic α_i
        Forms may be mixed except for ``pairings:``.
        """
        compact = text.replace(' ', '')
        shifted = compact.startswith('pairings:')
        if shifted:
            compact = compact[len('pairings:'):]
        rows, rhs = [], []
        for item in filter(None, compact.split(',')):
            if '=' not in item:
                raise ValidationError(f"Malformed weight entry: {item!r}")
            key, value = item.split('=', 1)
            try:
                value = Fraction(value)
            except ValueError as e:
                raise ValidationError(f"Malformed value in {item!r}") from e
            if shifted:
                root = self.parse_root(key)
                factor = Fraction(1) if root.isotropic else 2 / self.pairing(root, root)
                rows.append([s * c * factor for s, c in zip(self.signs, root.coords)])
            elif key.startswith('h_'):
                vector = self.parse_vector(key[2:])
                rows.append([s * c for s, c in zip(self.signs, vector)])
            elif key in self.coordinate_names:
                rows.append([Fraction(int(k == self.coordinate_names.index(key)))
                             for k in range(self.rank)])
            else:
                raise NotFoundError(f"Unknown weight key {key!r} for {self.label}")
            rhs.append(value)
        solution = solve_particular(rows, rhs, self.rank)
        if solution is None:
            raise ValidationError(f"Inconsistent weight specification: {text!r}")
        weight = Weight(tuple(solution))
        return weight - self.rho if shifted else weight

    def weight(self, coords: Sequence) -> Weight:
        if len(coords) != self.rank:
            raise DimensionMismatch(f"Expected {self.rank} coordinates, got {len(coords)}")
        return Weight(tuple(Fraction(c) for c in coords))

    # --- roots -------------------------------------------------------------

    def root(self, coords: Sequence[Fraction]) -> Root:
        key = tuple(Fraction(c) for c in coords)
        if key not in self._table:
            raise NotFoundError(f"{self._coords_str(key)} is not a root of {self.label}")
        return self._table[key]

    def is_root(self, coords: Sequence[Fraction]) -> bool:
        return tuple(coords) in self._table

    def is_positive(self, root) -> bool:
        return tuple(root.coords if hasattr(root, 'coords') else root) in self._positive

    @property
    def even_positive(self) -> List[Root]:
        return [r for r in self.positive_roots if not r.odd]

    @property
    def odd_positive(self) -> List[Root]:
        return [r for r in self.positive_roots if r.odd]

    @property
    def isotropic_positive(self) -> List[Root]:
        return [r for r in self.positive_roots if r.isotropic]

    def _coords_str(self, coords: Sequence[Fraction]) -> str:
        return '(' + ', '.join(fraction_str(c) for c in coords) + ')'

    # --- form --------------------------------------------------------------

    def pairing(self, x, y) -> Fraction:
        """(x, y) for weights, roots or coordinate tuples."""
        xs = x.coords if hasattr(x, 'coords') else x
        ys = y.coords if hasattr(y, 'coords') else y
        if len(xs) != len(ys) or len(xs) != len(self.signs):
            raise DimensionMismatch(f"Coordinate lengths {len(xs)} and {len(ys)} do not match {self.label}")
        return sum((s * Fraction(a) * Fraction(b) for s, a, b in zip(self.signs, xs, ys)), Fraction(0))

    def coroot_pairing(self, weight, alpha: Root) -> Fraction:
        """(λ, α^∨) = 2(λ, α)/(α, α)."""
        norm = self.pairing(alpha, alpha)
        if norm == 0:
            raise IsotropicCoroot(f"{self.root_name(alpha)} is isotropic")
        return 2 * self.pairing(weight, alpha) / norm

    def shifted_pairing(self, weight, root: Root) -> Fraction:
        """(λ+ρ, γ^∨) for non-isotropic γ and (λ+ρ, γ) for isotropic γ."""
        nu = Weight(tuple(weight.coords)) + self.rho
        if root.isotropic:
            return self.pairing(nu, root)
        return self.coroot_pairing(nu, root)

    def on_hyperplane(self, weight, gamma: Root, m: int = 1) -> bool:
        """Membership of λ in H_{γ,m}: (λ+ρ, γ) = m(γ,γ)/2."""
        return self.pairing(Weight(tuple(weight.coords)) + self.rho, gamma) == \
            Fraction(m) * self.pairing(gamma, gamma) / 2

    def form_table(self) -> List[List[Fraction]]:
        return [[self.pairing(a, b) for b in self.simple] for a in self.simple]

    # --- simple-root coordinates ------------------------------------------

    def simple_coefficients(self, root) -> Lattice:
        coords = tuple(Fraction(c) for c in (root.coords if hasattr(root, 'coords') else root))
        if coords not in self._expansions:
            rows = [[s.coords[k] for s in self.simple] for k in range(self.rank)]
            solution = solve_particular(rows, list(coords), len(self.simple))
            if solution is None or any(c.denominator != 1 for c in solution):
                raise ValidationError(f"{self._coords_str(coords)} is not in the root lattice")
            self._expansions[coords] = tuple(int(c) for c in solution)
        return self._expansions[coords]

    def height(self, root) -> int:
        return sum(self.simple_coefficients(root))

    def lattice_weight(self, eta: Sequence[int]) -> Weight:
        return Weight(self._sum(_scale(c, s.coords) for c, s in zip(eta, self.simple)))

    # --- Weyl group ----------------------------------------------------------

    @property
    def even_simple_slots(self) -> List[int]:
        return [k for k, root in enumerate(self.simple) if not root.odd]

    def reflect(self, coords: Sequence[Fraction], alpha: Root) -> Coords:
        c = self.coroot_pairing(Weight(tuple(coords)), alpha)
        return tuple(x - c * a for x, a in zip(coords, alpha.coords))

    def dot_reflect(self, weight: Weight, alpha: Root) -> Weight:
        """s_α·λ = s_α(λ+ρ) - ρ."""
        return Weight(self.reflect((weight + self.rho).coords, alpha)) - self.rho

    def apply_word(self, word: WeylWord, coords: Sequence[Fraction]) -> Coords:
        """w·x for w = s_{a1}...s_{al}: the last letter acts first."""
        for slot in reversed(word.letters):
            coords = self.reflect(coords, self.simple[slot])
        return tuple(coords)

    def dot_action(self, word: WeylWord, weight: Weight) -> Weight:
        return Weight(self.apply_word(word, (weight + self.rho).coords)) - self.rho

    def apply_inverse(self, word: WeylWord, coords: Sequence[Fraction]) -> Coords:
        for slot in word.letters:
            coords = self.reflect(coords, self.simple[slot])
        return tuple(coords)

    def word_name(self, word: WeylWord) -> str:
        if not word.letters:
            return 'id'
        return ' '.join(f"s_{self.simple_names[k]}" for k in word.letters)

    def find_weyl_expression(self, gamma: Root) -> Tuple[Root, WeylWord]:
        """
        Find a simple β and a reduced w over the even simple reflections with γ = wβ.

        Shortest words are tried first, then lexicographic order on slot indices.

        Raises:
            NotInEvenOrbit: If no such expression exists
        """
        if not self.is_positive(gamma):
            raise ValidationError(f"{self._coords_str(gamma.coords)} is not a positive root")
        slots = self.even_simple_slots
        simple = {r.coords: r for r in self.simple}
        for length in range(len(self.even_positive) + 1):
            for letters in itertools.product(slots, repeat=length):
                if any(a == b for a, b in zip(letters, letters[1:])):
                    continue
                word = WeylWord(tuple(letters))
                image = self.apply_inverse(word, gamma.coords)
                if image in simple:
                    return simple[image], word
        raise NotInEvenOrbit(f"{self.root_name(gamma)} is not W_even-conjugate to a simple root")

    def inversion_set(self, word: WeylWord) -> List[Root]:
        """N(w⁻¹) = {α ∈ Δ₀⁺ | w⁻¹α < 0}, by direct evaluation."""
        return [a for a in self.even_positive
                if not self.is_positive(self.apply_inverse(word, a.coords))]

    def n_set_and_exponents(self, word: WeylWord, beta: Root) -> List[Tuple[Root, Fraction]]:
        """
        List N(w⁻¹) in word order together with q(w, α) = (wβ, α^∨).

        Raises:
            NonReducedWord: If the word is not reduced
        """
        gamma = self.apply_word(word, beta.coords)
        roots = []
        for j, slot in enumerate(word.letters):
            coords = self.apply_word(WeylWord(word.letters[:j]), self.simple[slot].coords)
            if not self.is_positive(coords):
                raise NonReducedWord(f"{self.word_name(word)} is not reduced")
            roots.append(self._table[coords])
        if len(set(roots)) != word.length or set(roots) != set(self.inversion_set(word)):
            raise NonReducedWord(f"{self.word_name(word)} is not reduced")
        return [(alpha, self.coroot_pairing(Weight(gamma), alpha)) for alpha in roots]

    # --- odd reflections ----------------------------------------------------------

    def odd_reflection(self, basis: Sequence[Root], alpha: Root) -> Tuple[Root, ...]:
        """
        Reflect a simple basis at an isotropic simple root.

        Raises:
            NotSimple: If α is not in the basis
            NotIsotropic: If α is not isotropic
        """
        if alpha not in basis:
            raise NotSimple(f"{self._coords_str(alpha.coords)} is not simple")
        if not alpha.isotropic:
            raise NotIsotropic(f"{self._coords_str(alpha.coords)} is not isotropic")
        reflected = []
        for sigma in basis:
            if sigma == alpha:
                reflected.append(-alpha)
            elif self.pairing(sigma, alpha) != 0:
                reflected.append(self.root(_add(sigma.coords, alpha.coords)))
            else:
                reflected.append(sigma)
        return tuple(reflected)

    def chain_from_slots(self, basis: Sequence[Root], slots: Sequence[int]) -> BorelChain:
        """Apply odd reflections at the given 0-based slots, starting from ``basis``."""
        bases = [tuple(basis)]
        steps = []
        for slot in slots:
            current = bases[-1]
            if not 0 <= slot < len(current):
                raise NotSimple(f"No simple root in slot {slot + 1}")
            steps.append(current[slot])
            bases.append(self.odd_reflection(current, current[slot]))
        return BorelChain(tuple(steps), tuple(bases))

    def chain_to_simple(self, gamma: Root) -> BorelChain:
        """
        Shortest chain of odd reflections after which γ is simple.

        Only isotropic simple roots that are positive for this Borel and not yet
        used are reflected, so the steps are distinct positive roots.
        """
        start = BorelChain((), (self.simple,))
        queue = deque([start])
        seen = {self.simple}
        while queue:
            chain = queue.popleft()
            if gamma in chain.final_basis:
                return chain
            for root in chain.final_basis:
                if not root.isotropic or not self.is_positive(root) or root in chain.steps:
                    continue
                basis = self.odd_reflection(chain.final_basis, root)
                if basis in seen:
                    continue
                seen.add(basis)
                queue.append(BorelChain(chain.steps + (root,), chain.bases + (basis,)))
        raise NotSimple(f"{self.root_name(gamma)} cannot be made simple by odd reflections")

    # --- A(λ), B(λ) ----------------------------------------------------------------

    def ab_sets(self, weight) -> Tuple[List[Root], List[Root]]:
        """A(λ) = {α ∈ Δ₀⁺ | (λ+ρ, α^∨) ∈ ℕ∖{0}}, B(λ) = {γ ∈ Δ⁺ isotropic | (λ+ρ, γ) = 0}."""
        a_set = []
        for alpha in self.even_positive:
            value = self.shifted_pairing(weight, alpha)
            if value.denominator == 1 and value > 0:
                a_set.append(alpha)
        b_set = [g for g in self.isotropic_positive if self.shifted_pairing(weight, g) == 0]
        return a_set, b_set

    def check_orthogonal_isotropic(self, roots: Sequence[Root]) -> None:
        for root in roots:
            if not root.isotropic:
                raise NotOrthogonalIsotropic(f"{self.root_name(root)} is not isotropic")
        for x, y in itertools.combinations(roots, 2):
            if self.pairing(x, y) != 0:
                raise NotOrthogonalIsotropic(
                    f"{self.root_name(x)} and {self.root_name(y)} are not orthogonal")

    # --- serialization -------------------------------------------------------------

    def describe_root(self, root: Root) -> Dict:
        data = root.to_dict()
        data['name'] = self.root_name(root)
        data['height'] = self.height(root)
        return data

    def to_dict(self) -> Dict:
        return {
            'algebra': self.label,
            'borel': self.spec.borel_label,
            'coordinates': list(self.coordinate_names),
            'chain': [self._coords_str(r.coords) for r in self.chain.steps],
            'simple': [dict(self.describe_root(r), slot=n)
                       for n, r in zip(self.simple_names, self.simple)],
            'positive': [self.describe_root(r) for r in self.positive_roots],
            'isotropic_count': len(self.isotropic_positive),
            'rho': self.rho.to_dict(),
            'rho0': self.rho0.to_dict(),
            'rho1': self.rho1.to_dict(),
            'form': [[fraction_str(v) for v in row] for row in self.form_table()],
        }


def build_root_system(spec) -> RootSystem:
    """Build the root system for an AlgebraSpec or an algebra string."""
    if isinstance(spec, str):
        spec = parse_algebra(spec)
    return RootSystem(spec)
