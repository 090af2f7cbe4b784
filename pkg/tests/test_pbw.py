import pytest

from shared.exceptions import NotDivisible, UnevaluatedVariable


class TestStraightening:

    def test_commutator_sl2(self, sl2):
        pbw = sl2.pbw
        alpha = sl2.rs.simple[0]
        u = pbw.element([pbw.positive_letter(alpha), pbw.negative_letter(alpha)])
        assert u.terms == {
            ((1,), (1,)): pbw.ring.one,
            ((0,), ()): pbw.coroot_poly(alpha),
        }

    def test_anticommutator_odd(self, sl21):
        pbw = sl21.pbw
        b = sl21.rs.parse_root('b')
        ef = pbw.element([pbw.positive_letter(b), pbw.negative_letter(b)])
        fe = pbw.element([pbw.negative_letter(b), pbw.positive_letter(b)])
        assert (ef + fe).terms == {((0, 0, 0), ()): pbw.coroot_poly(b)}

    def test_odd_square_vanishes(self, sl21):
        pbw = sl21.pbw
        b = sl21.rs.parse_root('b')
        assert pbw.lowering(b, 2).is_zero

    def test_lowering_order_is_normal(self, sl3):
        pbw = sl3.pbw
        rs = sl3.rs
        a, b = rs.parse_root('a'), rs.parse_root('b')
        u = pbw.element([pbw.negative_letter(a), pbw.negative_letter(b)])
        assert u.in_lower_borel
        assert u.weight() == (-rs.parse_root('a+b')).coords
        assert len(u.terms) == 2

    def test_multiply_matches_element(self, sl3):
        pbw = sl3.pbw
        a = sl3.rs.parse_root('a')
        product = pbw.lowering(a) * pbw.lowering(a)
        assert product == pbw.lowering(a, 2)


class TestVermaAction:

    def test_raising_on_f_squared(self, sl2):
        pbw = sl2.pbw
        alpha = sl2.rs.simple[0]
        h1, h2 = pbw.H
        u = pbw.element([pbw.positive_letter(alpha)] + [pbw.negative_letter(alpha)] * 2)
        vector = pbw.act_on_verma(u)
        assert vector == {(1,): 2 * (h1 - h2) - 2}

    def test_evaluate_vector(self, sl2):
        pbw = sl2.pbw
        alpha = sl2.rs.simple[0]
        u = pbw.element([pbw.positive_letter(alpha)] + [pbw.negative_letter(alpha)] * 2)
        weight = sl2.rs.parse_weight('h_a=1')
        assert pbw.evaluate_vector(pbw.act_on_verma(u), weight) == {}

    def test_evaluate_requires_t(self, sl2):
        pbw = sl2.pbw
        weight = sl2.rs.parse_weight('h_a=1')
        with pytest.raises(UnevaluatedVariable):
            pbw.evaluate_poly(pbw.T + pbw.H[0], weight)
        assert pbw.evaluate_poly(pbw.T + pbw.H[0], weight, t=2) != 0


class TestRightDivision:

    def test_divides_trailing_power(self, sl3):
        pbw = sl3.pbw
        rs = sl3.rs
        a, b = rs.parse_root('a'), rs.parse_root('b')
        u = pbw.lowering(b) * pbw.lowering(a, 2)
        quotient = pbw.right_divide(u, a, 2)
        assert quotient * pbw.lowering(a, 2) == u

    def test_not_divisible(self, sl3):
        pbw = sl3.pbw
        rs = sl3.rs
        a, b = rs.parse_root('a'), rs.parse_root('b')
        with pytest.raises(NotDivisible):
            pbw.right_divide(pbw.lowering(b), a, 1)
