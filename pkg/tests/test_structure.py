from fractions import Fraction

import pytest

from features.context import get_context
from features.structure.service import BasisElement


def coroot_combination(rs, root):
    return {BasisElement('cartan', k): s * c
            for k, (s, c) in enumerate(zip(rs.signs, root.coords)) if c}


class TestNormalization:
    """[e_γ, e_{-γ}] equals h_γ for every positive root."""

    @pytest.mark.parametrize('algebra', ['sl(2)', 'sl(3)', 'sl(2|1)'])
    def test_root_vectors_normalized(self, algebra):
        context = get_context(algebra)
        rs, realization = context.rs, context.realization
        for root in rs.positive_roots:
            e = realization.root_vector(root, 1)
            f = realization.root_vector(root, -1)
            assert realization.bracket(e, f) == coroot_combination(rs, root)

    def test_odd_bracket_is_symmetric(self, sl21):
        rs, realization = sl21.rs, sl21.realization
        b = rs.parse_root('b')
        e = realization.root_vector(b, 1)
        f = realization.root_vector(b, -1)
        assert realization.bracket(e, f) == realization.bracket(f, e)
        assert realization.bracket(e, e) == {}

    def test_cartan_acts_by_weight(self, sl3):
        rs, realization = sl3.rs, sl3.realization
        alpha = rs.parse_root('a')
        e = realization.root_vector(alpha, 1)
        h = BasisElement('cartan', 0)
        assert realization.bracket(h, e) == {e: Fraction(alpha.coords[0])}

    def test_bracket_of_simple_roots(self, sl3):
        rs, realization = sl3.rs, sl3.realization
        e_a = realization.root_vector(rs.parse_root('a'), 1)
        e_b = realization.root_vector(rs.parse_root('b'), 1)
        result = realization.bracket(e_a, e_b)
        assert list(result) == [realization.root_vector(rs.parse_root('a+b'), 1)]


class TestIdentities:

    @pytest.mark.parametrize('algebra', ['sl(2)', 'sl(3)', 'sl(2|1)'])
    def test_super_antisymmetry(self, algebra):
        get_context(algebra).realization.check_super_antisymmetry()

    @pytest.mark.parametrize('algebra', ['sl(2)', 'sl(2|1)'])
    def test_super_jacobi(self, algebra):
        get_context(algebra).realization.check_super_jacobi()

    @pytest.mark.slow
    @pytest.mark.parametrize('algebra', ['gl(2|2)', 'osp(2|4)', 'gl(2|2)@anti'])
    def test_super_jacobi_larger(self, algebra):
        get_context(algebra).realization.check_super_jacobi()
