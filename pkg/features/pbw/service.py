"""
Normal-ordered arithmetic in U(g) with coefficients in S(h)[T].

A term is stored as e_{-π} · c(H) · e^{ρ}: lowering part, Cartan coefficient
in the middle, raising part. Straightening works on words of root-vector
letters with all Cartan factors collected at the front; a Cartan factor
crossing a word u of weight μ obeys u·f(H) = f(H - μ)·u.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ, sympify
from sympy.polys.rings import PolyElement, ring

from features.structure.service import BasisElement, Realization
from shared.exceptions import NotDivisible, UnevaluatedVariable, ValidationError
from shared.linalg import qq, to_fraction
from shared.models import Partition, Root

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
TermKey = Tuple[Partition, Partition]
VermaVector = Dict[Partition, PolyElement]


class PBWAlgebra:
    """
    PBW straightening engine for one realization.

    The memo tables are the only shared state; entries are written once and
    never mutated, so concurrent readers see either a miss or a final value.
    """

    def __init__(self, realization: Realization):
        self.realization = realization
        self.rs = realization.rs
        self.n = realization.n
        self.roots: List[Root] = realization.roots
        names = [f"h_{c}" for c in self.rs.coordinate_names]
        self.ring, *gens = ring(",".join(names + ['T']), QQ)
        self.H = gens[:-1]
        self.T = gens[-1]
        self.variable_names = names + ['T']
        self._weights = [tuple(realization.letter_weight(x)) for x in range(2 * self.n)]
        self._odd = [bool(realization.letter_parity(x)) for x in range(2 * self.n)]
        self._ranks: Dict[str, List[int]] = {'std': [2 * x for x in range(2 * self.n)]}
        self._memo: Dict[Tuple[str, bool, Word], Dict[Word, PolyElement]] = {}
        self._letter_action: Dict[Tuple[int, Partition], VermaVector] = {}

    # --- orders and words ---------------------------------------------------

    def order_last(self, index: int) -> str:
        """Order tag placing e_{-α_index} after all other lowering letters."""
        tag = f"last:{index}"
        if tag not in self._ranks:
            ranks = list(self._ranks['std'])
            ranks[index] = 2 * (self.n - 1) + 1
            self._ranks[tag] = ranks
        return tag

    def negative_letter(self, root: Root) -> int:
        return self.roots.index(root)

    def positive_letter(self, root: Root) -> int:
        return self.n + self.roots.index(root)

    def word_of(self, neg: Partition, pos: Partition = ()) -> Word:
        letters = []
        for i, k in enumerate(neg):
            letters.extend([i] * k)
        for i, k in enumerate(pos):
            letters.extend([self.n + i] * k)
        return tuple(letters)

    def split(self, word: Word) -> TermKey:
        neg = [0] * self.n
        pos = [0] * self.n
        for x in word:
            if x < self.n:
                neg[x] += 1
            else:
                pos[x - self.n] += 1
        return tuple(neg), tuple(pos) if any(pos) else ()

    def word_weight(self, word: Iterable[int]) -> Tuple[Fraction, ...]:
        total = [Fraction(0)] * self.rs.rank
        for x in word:
            for k, c in enumerate(self._weights[x]):
                total[k] += c
        return tuple(total)

    def eta_coords(self, neg: Partition) -> Tuple[Fraction, ...]:
        """Σ π(α) α as ε|δ coordinates."""
        total = [Fraction(0)] * self.rs.rank
        for root, k in zip(self.roots, neg):
            if k:
                for j, c in enumerate(root.coords):
                    total[j] += k * c
        return tuple(total)

    def partition_lattice(self, neg: Partition) -> Tuple[int, ...]:
        total = [0] * len(self.rs.simple)
        for root, k in zip(self.roots, neg):
            if k:
                for j, c in enumerate(self.rs.simple_coefficients(root)):
                    total[j] += k * c
        return tuple(total)

    # --- polynomial helpers ---------------------------------------------------

    def shift(self, poly: PolyElement, vector: Sequence[Fraction]) -> PolyElement:
        """f(H) ↦ f(H + vector)."""
        pairs = [(h, h + qq(v)) for h, v in zip(self.H, vector) if v]
        if not pairs or poly.is_ground:
            return poly
        return poly.compose(pairs)

    def cartan_poly(self, coefficients: Sequence) -> PolyElement:
        total = self.ring.zero
        for h, c in zip(self.H, coefficients):
            if c:
                total += h * qq(c)
        return total

    def coroot_poly(self, root: Root) -> PolyElement:
        """h_γ = Σ_k s_k γ_k H_k, so that μ(h_γ) = (γ, μ)."""
        return self.cartan_poly([s * c for s, c in zip(self.rs.signs, root.coords)])

    def shifted_form_poly(self, root: Root) -> PolyElement:
        """(λ+ρ, γ) as a polynomial in the coordinates λ_k = H_k."""
        return self.coroot_poly(root) + qq(self.rs.pairing(self.rs.rho, root))

    def evaluate_poly(self, poly: PolyElement, weight, t=None):
        values = [qq(c) for c in weight.coords]
        if poly.degree(self.T) > 0:
            if t is None:
                raise UnevaluatedVariable("T occurs in the coefficient but no value was given")
            values.append(qq(t))
        else:
            values.append(QQ(0))
        return poly(*values)

    def parse_poly(self, text: str) -> PolyElement:
        return self.ring.from_expr(sympify(text))

    @staticmethod
    def _accumulate(target: Dict, part: Dict, factor) -> None:
        for key, value in part.items():
            total = target.get(key)
            total = value * factor if total is None else total + value * factor
            if total:
                target[key] = total
            else:
                target.pop(key, None)

    # --- straightening ---------------------------------------------------------------

    def straighten(self, word: Word, order: str = 'std', verma: bool = False) -> Dict[Word, PolyElement]:
        """
        Rewrite a word of letters as Σ f_w(H)·w over normal words w.

        In Verma mode words ending in a raising letter are dropped, since they
        annihilate the highest weight vector.
        """
        key = (order, verma, word)
        cached = self._memo.get(key)
        if cached is None:
            if verma and word and word[-1] >= self.n:
                cached = {}
            else:
                cached = self._straighten_step(word, order, verma)
            self._memo[key] = cached
        return cached

    def _straighten_step(self, word: Word, order: str, verma: bool) -> Dict[Word, PolyElement]:
        rank = self._ranks[order]
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if x == y and self._odd[x]:
                return {}
            if rank[x] <= rank[y]:
                continue
            prefix, suffix = word[:i], word[i + 2:]
            result: Dict[Word, PolyElement] = {}
            sign = -1 if self._odd[x] and self._odd[y] else 1
            self._accumulate(result, self.straighten(prefix + (y, x) + suffix, order, verma), QQ(sign))
            bracket = self.realization.letter_bracket(x, y)
            for z, c in bracket.roots:
                self._accumulate(result, self.straighten(prefix + (z,) + suffix, order, verma), c)
            if any(bracket.cartan):
                moved = self.cartan_poly(bracket.cartan) - qq(sum(
                    (to_fraction(c) * w for c, w in zip(bracket.cartan, self.word_weight(prefix))),
                    Fraction(0)))
                self._accumulate(result, self.straighten(prefix + suffix, order, verma), moved)
            return result
        return {word: self.ring.one}

    def normal_order_factors(self, factors: Sequence[Union[int, PolyElement]]) -> 'UElement':
        """Straighten a product of letters and Cartan polynomials given left to right."""
        front = self.ring.one
        letters: List[int] = []
        for factor in factors:
            if isinstance(factor, PolyElement):
                front *= self.shift(factor, [-c for c in self.word_weight(letters)])
            else:
                letters.append(factor)
        result = UElement(self)
        for word, coeff in self.straighten(tuple(letters)).items():
            neg, pos = self.split(word)
            middle = self.shift(front * coeff, [-c for c in self.eta_coords(neg)])
            result._add_term((neg, pos), middle)
        return result

    def normal_order(self, items: Sequence[Tuple[BasisElement, Optional[PolyElement]]]) -> 'UElement':
        """
        Straighten Π c_i·x_i into neg·cartan·pos order.

        Each item is (basis element, coefficient); a missing coefficient is 1.
        """
        factors: List[Union[int, PolyElement]] = []
        for element, coeff in items:
            if coeff is not None:
                factors.append(coeff)
            if element.is_cartan:
                factors.append(self.H[element.index])
            else:
                factors.append(element.index + (self.n if element.sign > 0 else 0))
        return self.normal_order_factors(factors)

    def element(self, letters: Sequence[int], coeff: Optional[PolyElement] = None) -> 'UElement':
        factors: List[Union[int, PolyElement]] = [coeff] if coeff is not None else []
        return self.normal_order_factors(factors + list(letters))

    def lowering(self, root: Root, power: int = 1) -> 'UElement':
        return self.element([self.negative_letter(root)] * power)

    def one(self) -> 'UElement':
        return UElement(self, {((0,) * self.n, ()): self.ring.one})

    # --- products ------------------------------------------------------------------

    def multiply(self, a: 'UElement', b: 'UElement') -> 'UElement':
        result = UElement(self)
        for (n1, p1), c1 in a.terms.items():
            for (n2, p2), c2 in b.terms.items():
                factors = list(self.word_of(n1)) + [c1] + list(self.word_of((), p1)) \
                    + list(self.word_of(n2)) + [c2] + list(self.word_of((), p2))
                part = self.normal_order_factors(factors)
                for key, value in part.terms.items():
                    result._add_term(key, value)
        return result

    # --- Verma module action -------------------------------------------------------

    def apply_letter(self, letter: int, vector: VermaVector) -> VermaVector:
        result: VermaVector = {}
        for neg, coeff in vector.items():
            key = (letter, neg)
            action = self._letter_action.get(key)
            if action is None:
                action = {}
                for word, front in self.straighten((letter,) + self.word_of(neg), verma=True).items():
                    target, _ = self.split(word)
                    action[target] = self.shift(front, [-c for c in self.eta_coords(target)])
                self._letter_action[key] = action
            self._accumulate(result, action, coeff)
        return result

    def act_on_verma(self, u: 'UElement', vector: Optional[VermaVector] = None) -> VermaVector:
        """
        u·v in the basis e_{-π}v_λ with λ symbolic (λ_k = H_k).

        ``vector`` defaults to the highest weight vector v_λ.
        """
        if vector is None:
            vector = {(0,) * self.n: self.ring.one}
        result: VermaVector = {}
        for (neg, pos), middle in u.terms.items():
            current = dict(vector)
            for letter in reversed(self.word_of((), pos)):
                current = self.apply_letter(letter, current)
            current = {target: c * self.shift(middle, [-x for x in self.eta_coords(target)])
                       for target, c in current.items()}
            current = {k: v for k, v in current.items() if v}
            for letter in reversed(self.word_of(neg)):
                current = self.apply_letter(letter, current)
            self._accumulate(result, current, QQ(1))
        return result

    def evaluate_vector(self, vector: VermaVector, weight, t=None) -> Dict[Partition, Fraction]:
        values = {}
        for neg, poly in vector.items():
            value = to_fraction(self.evaluate_poly(poly, weight, t))
            if value:
                values[neg] = value
        return values

    # --- right division -------------------------------------------------------------

    def right_divide(self, u: 'UElement', root: Root, p: int) -> 'UElement':
        """
        θ with u = θ·e_{-α}^p, read off in the order that puts e_{-α} last.

        Raises:
            NotDivisible: If some PBW monomial of u carries fewer than p factors e_{-α}
        """
        index = self.negative_letter(root)
        order = self.order_last(index)
        lift = [p * c for c in root.coords]
        result = UElement(self)
        for (neg, pos), middle in u.terms.items():
            if pos:
                raise ValidationError("right_divide expects an element of U(n⁻)")
            for word, front in self.straighten(self.word_of(neg), order).items():
                k = self._trailing(word, index)
                if k < p:
                    raise NotDivisible(f"Term has only {k} trailing factors e_(-{self.rs.root_name(root)})")
                target, _ = self.split(word)
                coeff = self.shift(front, [-c for c in self.eta_coords(target)]) * middle
                coeff = self.shift(coeff, lift)
                quotient = self.element(word[:len(word) - p], coeff=None)
                for key, value in quotient.terms.items():
                    result._add_term(key, value * coeff)
        return result

    @staticmethod
    def _trailing(word: Word, letter: int) -> int:
        count = 0
        for x in reversed(word):
            if x != letter:
                break
            count += 1
        return count


class UElement:
    """Element Σ e_{-π} c_π(H) e^{ρ} of U(g) with coefficients in S(h)[T]."""

    def __init__(self, pbw: PBWAlgebra, terms: Optional[Dict[TermKey, PolyElement]] = None):
        self.pbw = pbw
        self.terms: Dict[TermKey, PolyElement] = {}
        for key, value in (terms or {}).items():
            self._add_term(key, value)

    def _add_term(self, key: TermKey, value: PolyElement) -> None:
        total = self.terms.get(key)
        total = value if total is None else total + value
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def __add__(self, other: 'UElement') -> 'UElement':
        result = UElement(self.pbw, self.terms)
        for key, value in other.terms.items():
            result._add_term(key, value)
        return result

    def __neg__(self) -> 'UElement':
        return UElement(self.pbw, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: 'UElement') -> 'UElement':
        return self + (-other)

    def __mul__(self, other) -> 'UElement':
        if isinstance(other, UElement):
            return self.pbw.multiply(self, other)
        factor = qq(other)
        return UElement(self.pbw, {k: v * factor for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, UElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def __repr__(self) -> str:
        return f"UElement({self.to_json()})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def in_lower_borel(self) -> bool:
        return all(not pos for _, pos in self.terms)

    def coefficient(self, neg: Partition) -> PolyElement:
        return self.terms.get((tuple(neg), ()), self.pbw.ring.zero)

    def weight(self) -> Optional[Tuple[Fraction, ...]]:
        """Weight of a homogeneous element, None when mixed."""
        weights = set()
        for neg, pos in self.terms:
            down = self.pbw.eta_coords(neg)
            up = self.pbw.eta_coords(pos) if pos else tuple(Fraction(0) for _ in down)
            weights.add(tuple(b - a for a, b in zip(down, up)))
        if len(weights) > 1:
            return None
        return weights.pop() if weights else tuple(Fraction(0) for _ in range(self.pbw.rs.rank))

    def evaluate(self, weight, t=None) -> 'UElement':
        """
        x(λ): substitute H = λ (and T = t) in every coefficient of u ∈ U(b⁻).

        Raises:
            UnevaluatedVariable: If T occurs and ``t`` is None
        """
        if not self.in_lower_borel:
            raise ValidationError("Evaluation at a weight needs an element of U(b⁻)")
        ring = self.pbw.ring
        return UElement(self.pbw, {
            key: ring.ground_new(self.pbw.evaluate_poly(c, weight, t))
            for key, c in self.terms.items()
        })

    def map_coefficients(self, func) -> 'UElement':
        return UElement(self.pbw, {k: func(v) for k, v in self.terms.items()})

    def to_json(self) -> List[Dict]:
        """Canonical JSON terms: lowering, Cartan monomial, raising, coefficient in T."""
        pbw = self.pbw
        rows = []
        for (neg, pos), poly in sorted(self.terms.items(), reverse=True):
            grouped: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
            for monom, c in poly.terms():
                grouped.setdefault(monom[:-1], {})[monom[-1:]] = c
            for cartan, t_part in sorted(grouped.items()):
                coeff = pbw.ring.zero
                for (k,), c in t_part.items():
                    coeff += pbw.T ** k * c
                rows.append({
                    'neg': [[i, k] for i, k in enumerate(neg) if k],
                    'cartan': [[pbw.variable_names[j], e] for j, e in enumerate(cartan) if e],
                    'pos': [[i, k] for i, k in enumerate(pos) if k],
                    'coeff': str(coeff),
                })
        return rows


def evaluate_at_weight(u: UElement, weight, t=None) -> UElement:
    return u.evaluate(weight, t)


def act_on_verma(u: UElement, vector: Optional[VermaVector] = None) -> VermaVector:
    return u.pbw.act_on_verma(u, vector)
