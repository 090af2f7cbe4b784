"""
Shared data models.

Defines the domain values passed between the feature services: algebra
specifications, roots and weights in ε|δ coordinates, Weyl words, Borel
chains, characters and the report types returned by the checks.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

# Exponent vector over the positive roots, in PBW order.
Partition = Tuple[int, ...]

# Element of Q⁺ written in simple-root coordinates.
Lattice = Tuple[int, ...]


def fraction_str(value: Fraction) -> str:
    return str(Fraction(value))


class Family(Enum):
    """Preset algebra families."""
    SL_N = "sl_n"
    GL_MN = "gl_mn"
    SL_MN = "sl_mn"
    OSP_2_2N = "osp_2_2n"


class BorelKind(Enum):
    """How the Borel subalgebra is reached from the distinguished one."""
    DISTINGUISHED = "distinguished"
    ANTI_DISTINGUISHED = "anti_distinguished"
    CHAIN = "chain"


class Method(Enum):
    SOLVE_INTERPOLATE = "solve_interpolate"
    RECURSION = "recursion"


class Side(Enum):
    PIN = "pin"
    PUN = "pun"


@dataclass(frozen=True)
class AlgebraSpec:
    """
    Parsed algebra string such as ``gl(2|2)@chain[2,1]``.

    ``chain`` holds 1-based slot indices of the odd reflections applied to the
    distinguished simple basis when ``borel`` is CHAIN.
    """
    family: Family
    ranks: Tuple[int, ...]
    borel: BorelKind = BorelKind.DISTINGUISHED
    chain: Tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if self.family is Family.SL_N:
            return f"sl({self.ranks[0]})"
        if self.family is Family.OSP_2_2N:
            return f"osp(2|{2 * self.ranks[0]})"
        name = 'gl' if self.family is Family.GL_MN else 'sl'
        return f"{name}({self.ranks[0]}|{self.ranks[1]})"

    @property
    def borel_label(self) -> str:
        if self.borel is BorelKind.CHAIN:
            return "chain[" + ",".join(str(i) for i in self.chain) + "]"
        return self.borel.value

    def to_dict(self) -> Dict[str, Any]:
        return {'algebra': self.label, 'borel': self.borel_label}


@dataclass(frozen=True)
class Weight:
    """Element of h* in ε|δ coordinates."""
    coords: Tuple[Fraction, ...]

    def __add__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'Weight':
        return Weight(tuple(-a for a in self.coords))

    def scale(self, factor) -> 'Weight':
        return Weight(tuple(Fraction(factor) * a for a in self.coords))

    @classmethod
    def zero(cls, rank: int) -> 'Weight':
        return cls(tuple(Fraction(0) for _ in range(rank)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_dict(self) -> List[str]:
        return [fraction_str(c) for c in self.coords]


@dataclass(frozen=True)
class Root:
    """
    Root of the realized algebra.

    Equality and hashing use the coordinates only; parity and isotropy are
    determined by them.
    """
    coords: Tuple[Fraction, ...]
    odd: bool = field(default=False, compare=False)
    isotropic: bool = field(default=False, compare=False)

    @property
    def parity(self) -> int:
        return 1 if self.odd else 0

    @property
    def weight(self) -> Weight:
        return Weight(self.coords)

    def __neg__(self) -> 'Root':
        return Root(tuple(-c for c in self.coords), self.odd, self.isotropic)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coords': [fraction_str(c) for c in self.coords],
            'parity': 'odd' if self.odd else 'even',
            'isotropic': self.isotropic,
        }


@dataclass(frozen=True)
class WeylWord:
    """Word s_{a1} s_{a2} ... s_{al} in the even simple reflections (slot indices)."""
    letters: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class BorelChain:
    """Odd reflections α_1, ..., α_r and the simple basis reached after each step."""
    steps: Tuple[Root, ...]
    bases: Tuple[Tuple[Root, ...], ...]

    @property
    def final_basis(self) -> Tuple[Root, ...]:
        return self.bases[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'steps': [r.to_dict()['coords'] for r in self.steps],
            'bases': [[r.to_dict()['coords'] for r in basis] for basis in self.bases],
        }


@dataclass
class FormalCharacter:
    """Truncated character: η ∈ Q⁺ (simple-root coordinates, height ≤ depth) → count."""
    depth: int
    table: Dict[Lattice, int]

    def coefficient(self, eta: Lattice) -> int:
        return self.table.get(tuple(eta), 0)

    def shifted(self, offset: Lattice) -> 'FormalCharacter':
        """Character multiplied by ε^{-offset}, truncated at the same depth."""
        table = {}
        for eta, count in self.table.items():
            moved = tuple(a + b for a, b in zip(eta, offset))
            if sum(moved) <= self.depth:
                table[moved] = count
        return FormalCharacter(self.depth, table)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'depth': self.depth,
            'entries': [[list(eta), count] for eta, count in sorted(self.table.items())],
        }


@dataclass
class GramMatrix:
    """Contravariant form on M(λ+Tξ)^{λ+Tξ-η}; entries live in QQ[T]."""
    eta: Lattice
    basis: List[Partition]
    entries: List[List[Any]]

    @property
    def size(self) -> int:
        return len(self.basis)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'eta': list(self.eta),
            'basis': [list(p) for p in self.basis],
            'entries': [[str(e) for e in row] for row in self.entries],
        }


@dataclass
class ShapovalovElement:
    """
    θ_{γ,m} = Σ_π e_{-π} H_π with H_π reduced modulo the hyperplane H_{γ,m}.

    ``coeffs`` maps partitions to polynomials in the Cartan variables of the
    algebra context; ``eliminated`` is the coordinate index substituted away.
    """
    algebra: str
    borel: str
    gamma: Root
    m: int
    coeffs: Dict[Partition, Any]
    eliminated: int
    ordering: str
    method: Method
    weyl_data: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'algebra': self.algebra,
            'borel': self.borel,
            'gamma': self.gamma.to_dict()['coords'],
            'm': self.m,
            'ordering': self.ordering,
            'eliminated': self.eliminated,
            'method': self.method.value,
            'coeffs': [[list(p), str(c)] for p, c in sorted(self.coeffs.items(), reverse=True)],
            'weyl_data': self.weyl_data,
        }


@dataclass
class DegreeReport:
    degrees: Dict[Partition, int]
    top_degree: int
    top_partition: Partition
    leading_exponents: Dict[str, int]
    leading_scalar: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degrees': [[list(p), d] for p, d in sorted(self.degrees.items(), reverse=True)],
            'top_degree': self.top_degree,
            'top_partition': list(self.top_partition),
            'leading_exponents': dict(self.leading_exponents),
            'leading_scalar': fraction_str(self.leading_scalar),
        }


@dataclass(frozen=True)
class DeformationConfig:
    """
    Deformation direction ξ with the constraint flags it was checked against.

    ``orthogonal_to`` lists the isotropic roots γ with (ξ, γ) = 0 required.
    """
    xi: Weight
    orthogonal_to: Tuple[Root, ...] = ()
    nonintegral_even: bool = False
    nonzero_even: bool = False
    nonzero_all: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'xi': self.xi.to_dict(),
            'orthogonal_to': [r.to_dict()['coords'] for r in self.orthogonal_to],
            'nonintegral_even': self.nonintegral_even,
            'nonzero_even': self.nonzero_even,
            'nonzero_all': self.nonzero_all,
        }


@dataclass
class JantzenLayers:
    """Layer dimensions d_1 ≥ d_2 ≥ ... at one weight offset η."""
    eta: Lattice
    layers: Tuple[int, ...]
    valuations: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.layers)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'eta': list(self.eta),
            'layers': list(self.layers),
            'total': self.total,
            'valuations': list(self.valuations),
        }


@dataclass
class SumFormulaRow:
    eta: Lattice
    lhs: int
    rhs: int
    contributions: Dict[str, int]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            'eta': list(self.eta),
            'lhs': self.lhs,
            'rhs': self.rhs,
            'contributions': dict(sorted(self.contributions.items())),
        }


@dataclass
class SumFormulaReport:
    weight: Weight
    depth: int
    rows: List[SumFormulaRow]
    a_set: List[Root]
    b_set: List[Root]
    deformation: DeformationConfig
    flags: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(row.holds for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': self.weight.to_dict(),
            'depth': self.depth,
            'verdict': 'pass' if self.verdict else 'fail',
            'A': [r.to_dict()['coords'] for r in self.a_set],
            'B': [r.to_dict()['coords'] for r in self.b_set],
            'deformation': self.deformation.to_dict(),
            'flags': list(self.flags),
            'rows': [row.to_dict() for row in self.rows],
        }
