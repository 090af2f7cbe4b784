import pytest

from features import services
from features.jantzen.service import DEPTH_TOO_SMALL, FILTRATION, MX, NONORTHOGONAL_B, PIG
from features.jantzen.valuation import (
    checked_valuations, determinant_valuation, layers_from_valuations, smith_valuations, valuation,
)
from features.verma.service import T, T_RING
from shared.exceptions import NotGenericSample, PreconditionViolated, SampleDegeneracy
from shared.linalg import qq

ZERO = T_RING.zero
ONE = T_RING.one


class TestValuations:

    def test_valuation(self):
        assert valuation(T ** 2 + T ** 3) == 2
        assert valuation(ONE) == 0
        assert valuation(ZERO) == -1

    def test_diagonal(self):
        assert smith_valuations([[T, ZERO], [ZERO, T ** 2]]) == (1, 2)

    def test_elimination(self):
        rows = [[T + T ** 2, T], [T, T]]
        assert smith_valuations(rows) == (1, 2)
        assert determinant_valuation(rows) == 3
        assert checked_valuations(rows) == (1, 2)

    def test_unit_entries(self):
        assert checked_valuations([[T, ONE], [ONE, ZERO]]) == (0, 0)

    def test_singular_matrix(self):
        with pytest.raises(SampleDegeneracy):
            smith_valuations([[ONE, T], [T, T ** 2]])
        with pytest.raises(SampleDegeneracy):
            determinant_valuation([[ONE, T], [T, T ** 2]])

    def test_layers(self):
        assert layers_from_valuations((0, 1, 1, 3)) == (3, 1, 1)
        assert layers_from_valuations((0, 0)) == ()
        assert layers_from_valuations(()) == ()


class TestDeformation:

    def test_rho_when_admissible(self, jantzen_sl2):
        cfg = jantzen_sl2.choose_deformation(FILTRATION)
        assert cfg.xi == jantzen_sl2.rs.rho
        assert cfg.nonzero_all

    def test_search_for_orthogonal_direction(self, jantzen_sl21):
        rs = jantzen_sl21.rs
        b = rs.parse_root('b')
        cfg = jantzen_sl21.choose_deformation(MX, ['b'])
        assert rs.pairing(cfg.xi, b) == 0
        assert cfg.nonintegral_even
        assert cfg.orthogonal_to == (b,)

    def test_pig_mode(self, jantzen_sl21):
        cfg = jantzen_sl21.choose_deformation(PIG, ['a+b'])
        assert cfg.nonzero_even

    def test_filtration_search_avoids_walls(self, jantzen_sl21):
        rs = jantzen_sl21.rs
        cfg = jantzen_sl21.choose_deformation(FILTRATION)
        assert all(rs.pairing(cfg.xi, r) for r in rs.positive_roots)

    def test_deterministic(self, jantzen_sl21):
        again = services.jantzen_service('sl(2|1)', seed=0)
        assert jantzen_sl21.choose_deformation(MX, ['b']) == again.choose_deformation(MX, ['b'])

    def test_supplied_direction_is_checked(self, jantzen_sl2):
        with pytest.raises(PreconditionViolated):
            jantzen_sl2.choose_deformation(FILTRATION, xi='e1=1,e2=1')

    def test_unknown_mode(self, jantzen_sl2):
        with pytest.raises(PreconditionViolated):
            jantzen_sl2.choose_deformation('sideways')


class TestLayers:

    def test_sl2_layers(self, jantzen_sl2):
        weight = 'pairings:a=2'
        assert jantzen_sl2.layer_dimensions(weight, eta=[1]).layers == ()
        layers = jantzen_sl2.layer_dimensions(weight, eta=[2])
        assert layers.layers == (1,)
        assert layers.valuations == (1,)

    def test_value_form_weight(self, jantzen_sl2):
        assert jantzen_sl2.layer_dimensions('h_a=1', eta=[2]).layers == (1,)

    def test_layer_table(self, jantzen_sl2):
        table = jantzen_sl2.layer_table('pairings:a=2', 3)
        assert [t.total for t in table] == [0, 0, 1, 1]

    def test_determinant_valuation(self, jantzen_sl2):
        assert jantzen_sl2.determinant_valuation('pairings:a=2', eta=[3]) == 1

    def test_generic_weight_has_no_layers(self, jantzen_sl2):
        table = jantzen_sl2.layer_table('pairings:a=1/2', 4)
        assert all(t.layers == () for t in table)

    def test_odd_simple_root(self, jantzen_sl21, generic_on_b):
        assert jantzen_sl21.layer_dimensions(generic_on_b, eta='b').layers == (1,)


class TestSumFormula:

    @pytest.mark.parametrize('depth', [1, 2, 3])
    def test_sl2_passes(self, jantzen_sl2, depth):
        report = jantzen_sl2.sum_formula_report('pairings:a=2', depth)
        assert report.verdict
        assert len(report.a_set) == 1

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_sl2_lhs_is_reflected_verma(self, jantzen_sl2, n):
        report = jantzen_sl2.sum_formula_report(f'pairings:a={n}', 6)
        assert report.verdict
        assert DEPTH_TOO_SMALL not in report.flags
        assert [row.lhs for row in report.rows] == [0] * n + [1] * (7 - n)

    def test_sl2_contributions(self, jantzen_sl2):
        report = jantzen_sl2.sum_formula_report('pairings:a=2', 3)
        rows = {row.eta: row for row in report.rows}
        assert rows[(2,)].contributions == {'A:a': 1}
        assert rows[(1,)].contributions == {}

    def test_depth_too_small(self, jantzen_sl2):
        report = jantzen_sl2.sum_formula_report('pairings:a=3', 1)
        assert DEPTH_TOO_SMALL in report.flags
        assert report.verdict

    def test_generic_weight(self, jantzen_sl2):
        report = jantzen_sl2.sum_formula_report('pairings:a=1/2', 3)
        assert report.verdict
        assert not report.a_set and not report.b_set
        assert all(row.lhs == 0 for row in report.rows)

    def test_sl3(self):
        service = services.jantzen_service('sl(3)', seed=0)
        report = service.sum_formula_report('pairings:a=1,b=1', 3)
        assert report.verdict
        assert len(report.a_set) == 3

    def test_typical_on_one_hyperplane(self, jantzen_sl21, generic_on_b):
        report = jantzen_sl21.sum_formula_report(generic_on_b, 6)
        assert report.verdict
        assert [jantzen_sl21.rs.root_name(r) for r in report.b_set] == ['b']

    def test_on_odd_sum_hyperplane(self, jantzen_sl21, generic_on_ab):
        report = jantzen_sl21.sum_formula_report(generic_on_ab, 6)
        assert report.verdict
        assert [jantzen_sl21.rs.root_name(r) for r in report.b_set] == ['a+b']

    def test_nonorthogonal_b_flag(self, jantzen_sl21):
        report = jantzen_sl21.sum_formula_report('pairings:a=0,b=0', 2)
        assert NONORTHOGONAL_B in report.flags
        assert report.to_dict()['verdict'] in ('pass', 'fail')


class TestMX:

    def test_sl21_dimensions(self, jantzen_sl21, generic_on_b):
        report = jantzen_sl21.mx_weight_dims(generic_on_b, ['b'], 2)
        dims = {tuple(row['eta']): row['dim'] for row in report['rows']}
        assert dims[(0, 0)] == 1
        assert dims[(0, 1)] == 0
        assert dims[(1, 0)] == 1
        assert dims[(1, 1)] == 1
        assert report['verdict'] == 'pass'
        assert report['series'] is None

    def test_sl21_through_depth_six(self, jantzen_sl21, generic_on_b):
        report = jantzen_sl21.mx_weight_dims(generic_on_b, ['b'], 6)
        assert report['verdict'] == 'pass'
        assert len(report['rows']) == len(jantzen_sl21.verma.lattice_points(6))
        assert all(row['dim'] == row['expected'] for row in report['rows'])

    def test_other_hyperplane(self, jantzen_sl21, generic_on_ab):
        report = jantzen_sl21.mx_weight_dims(generic_on_ab, ['a+b'], 6)
        assert all(row['dim'] == row['expected'] for row in report['rows'])

    def test_off_hyperplane(self, jantzen_sl21, generic_on_ab):
        with pytest.raises(PreconditionViolated):
            jantzen_sl21.mx_weight_dims(generic_on_ab, ['b'], 1)

    def test_kernel_is_submodule_for_generic_weight(self, jantzen_sl21, generic_on_b):
        report = jantzen_sl21.strict_kernel_probe(generic_on_b, 'b', 6)
        assert report['rows']
        for row in report['rows']:
            assert row['kernel'] >= row['submodule']
        assert report['strict'] == [row['eta'] for row in report['rows'] if row['strict']]
        assert report['strict'] == []

    @pytest.mark.parametrize('gamma', ['b', 'a+b'])
    def test_kernel_at_minus_rho(self, jantzen_sl21, gamma):
        rs = jantzen_sl21.rs
        report = jantzen_sl21.strict_kernel_probe(rs.rho.scale(-1), gamma, 4)
        assert report['strict'] == []
        assert all(row['kernel'] == row['submodule'] for row in report['rows'])
        dims = {tuple(row['eta']): row['kernel'] for row in report['rows']}
        gamma_eta = rs.simple_coefficients(rs.parse_root(gamma))
        assert dims[gamma_eta] == 1
        assert dims[(0, 0)] == 0

    def test_rank_along_deformation(self, jantzen_sl2):
        weight = jantzen_sl2.rs.parse_weight('pairings:a=2')
        pbw = jantzen_sl2.pbw
        vector = {(1,): pbw.H[0] - qq(weight.coords[0])}
        assert jantzen_sl2._rank_at([vector], weight, (1,)) == 0
        assert jantzen_sl2._generic_rank([vector], weight, jantzen_sl2.rs.rho, (1,)) == 1


@pytest.mark.slow
class TestOrthogonalPair:

    def test_mx_with_two_roots(self, gl22_pair_weight):
        service = services.jantzen_service('gl(2|2)', seed=0)
        report = service.mx_weight_dims(gl22_pair_weight, ['a+b+c', 'b'], 2)
        assert report['verdict'] == 'pass'
        assert report['series'] == {'w2_contains': True, 'w3_contains': True, 'triple_vanishes': True}

    def test_layers_at_sum_of_roots(self, gl22_pair_weight):
        service = services.jantzen_service('gl(2|2)', seed=0)
        report = service.pig_check(gl22_pair_weight, 'a+b+c', 'b', 4)
        rows = {tuple(row['eta']): row for row in report['rows']}
        top = rows[(1, 2, 1)]
        assert top['lhs'] == 4
        assert top['deep'] == 1
        assert top['layers'][1:] == [1]
        assert report['verdict'] == 'pass'

    def test_non_generic_sample(self):
        service = services.jantzen_service('gl(2|2)', seed=0)
        with pytest.raises(NotGenericSample):
            service.pig_check('pairings:a=1,b=0,c=1,a+b+c=0', 'a+b+c', 'b', 2)


@pytest.mark.slow
class TestSingleHyperplaneRankThree:
    """Weight on H_b only: the other isotropic pairings and the even coroot pairings are non-integral."""

    WEIGHT = 'pairings:a=4/21,b=0,c=1/7'

    def test_mx_dims_sl22(self):
        service = services.jantzen_service('sl(2|2)', seed=0)
        report = service.mx_weight_dims(self.WEIGHT, ['b'], 6)
        assert report['verdict'] == 'pass'
        assert all(row['dim'] == row['expected'] for row in report['rows'])

    def test_sum_formula_gl22(self):
        service = services.jantzen_service('gl(2|2)', seed=0)
        report = service.sum_formula_report(self.WEIGHT, 6)
        assert report.verdict
        assert not report.a_set
        assert [service.rs.root_name(r) for r in report.b_set] == ['b']
