from fractions import Fraction

import pytest

from features.rootdata.service import build_root_system, parse_algebra
from shared.exceptions import (
    IsotropicCoroot, NotFoundError, NotOrthogonalIsotropic, OddNonIsotropicRoot, UnsupportedFamily,
)
from shared.models import BorelKind, Family, Weight, WeylWord


class TestParseAlgebra:

    def test_presets(self):
        assert parse_algebra('sl(3)').family is Family.SL_N
        assert parse_algebra('gl(2|2)').ranks == (2, 2)
        assert parse_algebra('osp(2|4)').ranks == (2,)
        assert parse_algebra('sl(2|1)').family is Family.SL_MN

    def test_borel_suffix(self):
        assert parse_algebra('gl(2|2)@anti').borel is BorelKind.ANTI_DISTINGUISHED
        spec = parse_algebra('gl(2|2)@chain[2,1]')
        assert spec.borel is BorelKind.CHAIN
        assert spec.chain == (2, 1)
        assert spec.borel_label == 'chain[2,1]'

    def test_unsupported(self):
        with pytest.raises(UnsupportedFamily):
            parse_algebra('so(5)')
        with pytest.raises(UnsupportedFamily):
            parse_algebra('osp(4|2)')

    def test_odd_non_isotropic_rejected(self):
        with pytest.raises(OddNonIsotropicRoot):
            parse_algebra('osp(1|2)')


class TestRootSystem:

    def test_sl3_counts(self, sl3):
        rs = sl3.rs
        assert len(rs.positive_roots) == 3
        assert len(rs.simple) == 2
        assert rs.isotropic_positive == []

    def test_sl21_counts(self, sl21):
        rs = sl21.rs
        assert len(rs.positive_roots) == 3
        assert len(rs.isotropic_positive) == 2
        assert [rs.root_name(r) for r in rs.even_positive] == ['a']

    def test_gl22_counts(self, gl22):
        rs = gl22.rs
        assert len(rs.positive_roots) == 6
        assert len(rs.isotropic_positive) == 4

    def test_osp24_counts(self):
        rs = build_root_system('osp(2|4)')
        assert len(rs.even_positive) == 4
        assert len(rs.isotropic_positive) == 4

    def test_rho_sl21(self, sl21):
        assert sl21.rs.rho == Weight((Fraction(0), Fraction(-1), Fraction(1)))

    def test_rho_pairs_to_half_norm_with_simple_roots(self, sl3):
        rs = sl3.rs
        for alpha in rs.simple:
            assert rs.pairing(rs.rho, alpha) == rs.pairing(alpha, alpha) / 2

    def test_isotropic_coroot(self, sl21):
        rs = sl21.rs
        with pytest.raises(IsotropicCoroot):
            rs.coroot_pairing(rs.rho, rs.parse_root('b'))

    def test_parse_root_by_letters_and_coordinates(self, sl21):
        rs = sl21.rs
        assert rs.parse_root('a+b') == rs.parse_root('e1-d1')
        with pytest.raises(NotFoundError):
            rs.parse_root('a+c')

    def test_simple_coefficients_and_height(self, gl22):
        rs = gl22.rs
        gamma = rs.parse_root('e1-d2')
        assert rs.simple_coefficients(gamma) == (1, 1, 1)
        assert rs.height(gamma) == 3


class TestWeights:

    def test_pairings_form(self, sl2):
        rs = sl2.rs
        weight = rs.parse_weight('pairings:a=2')
        assert rs.shifted_pairing(weight, rs.simple[0]) == 2

    def test_value_form(self, sl2):
        rs = sl2.rs
        weight = rs.parse_weight('h_a=1')
        assert rs.pairing(weight, rs.simple[0]) == 1

    def test_dot_reflection(self, sl2):
        rs = sl2.rs
        alpha = rs.simple[0]
        weight = rs.parse_weight('pairings:a=3')
        assert weight - rs.dot_reflect(weight, alpha) == alpha.weight.scale(3)

    def test_dot_action_of_words(self, sl3):
        rs = sl3.rs
        weight = rs.parse_weight('pairings:a=1,b=2')
        assert rs.dot_action(WeylWord(()), weight) == weight
        assert rs.dot_action(WeylWord((0,)), weight) == rs.dot_reflect(weight, rs.simple[0])
        twice = rs.dot_action(WeylWord((1, 0)), weight)
        assert twice == rs.dot_reflect(rs.dot_reflect(weight, rs.simple[0]), rs.simple[1])

    def test_on_hyperplane(self, sl21, generic_on_b):
        rs = sl21.rs
        weight = rs.parse_weight(generic_on_b)
        assert rs.on_hyperplane(weight, rs.parse_root('b'))
        assert not rs.on_hyperplane(weight, rs.parse_root('a+b'))

    def test_ab_sets(self, sl2, sl21):
        rs = sl2.rs
        a_set, b_set = rs.ab_sets(rs.parse_weight('pairings:a=2'))
        assert a_set == [rs.simple[0]] and b_set == []
        rs = sl21.rs
        a_set, b_set = rs.ab_sets(rs.parse_weight('pairings:a=0,b=0'))
        assert a_set == []
        assert set(b_set) == set(rs.isotropic_positive)


class TestWeylGroup:

    def test_expression_sl3(self, sl3):
        rs = sl3.rs
        gamma = rs.parse_root('a+b')
        beta, word = rs.find_weyl_expression(gamma)
        assert beta in rs.simple
        assert word.length == 1
        assert rs.apply_word(word, beta.coords) == gamma.coords

    def test_exponents(self, sl3):
        rs = sl3.rs
        gamma = rs.parse_root('a+b')
        beta, word = rs.find_weyl_expression(gamma)
        steps = rs.n_set_and_exponents(word, beta)
        assert len(steps) == 1
        assert steps[0][1] == 1

    def test_isotropic_in_even_orbit(self, sl21):
        rs = sl21.rs
        beta, word = rs.find_weyl_expression(rs.parse_root('a+b'))
        assert rs.root_name(beta) == 'b'
        assert word.length == 1


class TestOddReflections:

    def test_chain_to_simple(self, sl21):
        rs = sl21.rs
        gamma = rs.parse_root('a+b')
        chain = rs.chain_to_simple(gamma)
        assert len(chain.steps) == 1
        assert gamma in chain.final_basis

    def test_anti_distinguished(self):
        rs = build_root_system('gl(2|2)@anti')
        assert rs.chain.steps
        assert rs.simple != rs.distinguished_basis
        assert len(rs.positive_roots) == 6

    def test_orthogonality_check(self, sl21, gl22):
        rs = sl21.rs
        with pytest.raises(NotOrthogonalIsotropic):
            rs.check_orthogonal_isotropic([rs.parse_root('a+b'), rs.parse_root('b')])
        rs = gl22.rs
        rs.check_orthogonal_isotropic([rs.parse_root('a+b+c'), rs.parse_root('b')])
