from dataclasses import replace
from fractions import Fraction

import pytest

from features import services
from shared.exceptions import NotIsotropic, NotOrthogonalIsotropic, PreconditionViolated, PropertyViolated
from shared.models import Method, Side


class TestCompute:

    def test_simple_root_is_lowering_power(self, shapovalov_sl3):
        theta = shapovalov_sl3.compute_shapovalov('a', 2)
        assert theta.coeffs == {shapovalov_sl3.root_partition(theta.gamma, 2): shapovalov_sl3.pbw.ring.one}

    def test_normalized_at_simple_partition(self, shapovalov_sl3):
        theta = shapovalov_sl3.compute_shapovalov('a+b')
        pi0 = shapovalov_sl3.simple_partition(theta.gamma)
        assert theta.coeffs[pi0] == 1
        assert set(theta.coeffs) == {pi0, shapovalov_sl3.root_partition(theta.gamma)}

    def test_cached_per_service(self, shapovalov_sl3):
        assert shapovalov_sl3.compute_shapovalov('a+b') is shapovalov_sl3.compute_shapovalov('a+b')

    def test_isotropic_multiplicity(self, shapovalov_sl21):
        with pytest.raises(PreconditionViolated):
            shapovalov_sl21.compute_shapovalov('b', 2)

    def test_non_positive_multiplicity(self, shapovalov_sl3):
        with pytest.raises(PreconditionViolated):
            shapovalov_sl3.compute_shapovalov('a', 0)

    @pytest.mark.parametrize('algebra,gamma,m', [
        ('sl(3)', 'a+b', 1),
        ('sl(3)', 'a+b', 2),
        ('sl(4)', 'a+b+c', 1),
        ('sl(2|1)', 'a+b', 1),
        ('gl(2|2)', 'a+b+c', 1),
        ('osp(2|4)', 'a+b', 1),
        ('osp(2|4)', 'a+2b+c', 1),
    ])
    def test_methods_agree(self, algebra, gamma, m):
        service = services.shapovalov_service(algebra, seed=0)
        assert service.methods_agree(gamma, m)

    def test_recursion_with_dependent_walls(self):
        service = services.shapovalov_service('osp(2|4)', seed=0)
        theta = service.compute_shapovalov('a+2b+c', 1, Method.RECURSION)
        assert theta.method is Method.RECURSION
        beta, word = service.rs.find_weyl_expression(theta.gamma)
        assert len(service.rs.n_set_and_exponents(word, beta)) == 3
        assert service.verify_defining_property(theta)['verified']

    def test_describe(self, shapovalov_sl21):
        data = shapovalov_sl21.describe(shapovalov_sl21.compute_shapovalov('a+b'))
        assert data['gamma_name'] == 'a+b'
        assert data['method'] == Method.SOLVE_INTERPOLATE.value
        assert data['terms']


class TestVerification:

    @pytest.mark.parametrize('gamma,m', [('a+b', 1), ('a+b', 2), ('a', 3)])
    def test_defining_property_sl3(self, shapovalov_sl3, gamma, m):
        report = shapovalov_sl3.verify_defining_property(shapovalov_sl3.compute_shapovalov(gamma, m))
        assert report['verified']
        assert set(report['raising']) == {'a', 'b'}

    def test_defining_property_isotropic(self, shapovalov_sl21):
        theta = shapovalov_sl21.compute_shapovalov('a+b')
        assert shapovalov_sl21.verify_defining_property(theta)['verified']

    @pytest.mark.parametrize('algebra,gamma,m', [
        ('sl(4)', 'a+b+c', 1),
        ('sl(4)', 'a+b', 2),
        ('gl(2|2)', 'a+b', 1),
        ('gl(2|2)', 'a+b+c', 1),
        ('osp(2|4)', 'a+b', 1),
        ('osp(2|4)', 'a+2b+c', 1),
        ('osp(2|4)', 'b+c', 2),
    ])
    def test_defining_property_and_degrees(self, algebra, gamma, m):
        service = services.shapovalov_service(algebra, seed=0)
        theta = service.compute_shapovalov(gamma, m)
        assert service.verify_defining_property(theta)['verified']
        report = service.degree_report(theta)
        assert report.top_partition == service.root_partition(theta.gamma, m)
        assert report.top_degree < m * service.rs.height(theta.gamma)
        assert report.leading_scalar != 0

    def test_broken_element_is_rejected(self, shapovalov_sl3):
        theta = shapovalov_sl3.compute_shapovalov('a+b')
        pi0 = shapovalov_sl3.simple_partition(theta.gamma)
        broken = replace(theta, coeffs={pi0: theta.coeffs[pi0]})
        with pytest.raises(PropertyViolated):
            shapovalov_sl3.verify_defining_property(broken)

    def test_degree_report(self, shapovalov_sl3):
        theta = shapovalov_sl3.compute_shapovalov('a+b')
        report = shapovalov_sl3.degree_report(theta)
        assert report.top_partition == shapovalov_sl3.root_partition(theta.gamma)
        assert report.top_degree == 1
        assert report.leading_exponents == {'a': 1}
        assert report.leading_scalar != 0

    def test_degree_report_isotropic(self, shapovalov_sl21):
        theta = shapovalov_sl21.compute_shapovalov('a+b')
        report = shapovalov_sl21.degree_report(theta)
        assert report.top_degree == 1
        assert report.leading_exponents == {'a': 1}

    def test_oracle(self, shapovalov_sl3):
        report = shapovalov_sl3.oracle_check('a+b', 1, 4)
        assert report['agree']
        assert report['compared'] > 0


class TestIsotropicIdentities:

    def test_square_vanishes(self, shapovalov_sl21):
        assert shapovalov_sl21.square_check('a+b')
        assert shapovalov_sl21.square_check('b')

    @pytest.mark.parametrize('algebra,gamma', [
        ('gl(2|2)', 'a+b'),
        ('gl(2|2)', 'b+c'),
        ('gl(2|2)', 'a+b+c'),
        ('osp(2|4)', 'a+b'),
        ('osp(2|4)', 'a+b+c'),
        ('osp(2|4)', 'a+2b+c'),
    ])
    def test_square_vanishes_in_rank_three(self, algebra, gamma):
        assert services.shapovalov_service(algebra, seed=0).square_check(gamma)

    def test_square_needs_isotropic_root(self, shapovalov_sl21):
        with pytest.raises(NotIsotropic):
            shapovalov_sl21.square_check('a')

    def test_chain_compare(self, shapovalov_sl21):
        report = shapovalov_sl21.borel_chain_compare('a+b', count=5)
        assert report['verified']
        assert report['chain'] == ['b']
        assert report['F'] == []
        assert report['c'] == '1'
        assert report['samples'] > 0

    @pytest.mark.parametrize('algebra,gamma', [
        ('gl(2|2)', 'b+c'),
        ('gl(2|2)', 'a+b+c'),
        ('osp(2|4)', 'a+b'),
        ('osp(2|4)', 'a+b+c'),
    ])
    def test_chain_compare_in_rank_three(self, algebra, gamma):
        report = services.shapovalov_service(algebra, seed=0).borel_chain_compare(gamma, count=20)
        assert report['verified']
        assert report['chain']
        assert Fraction(report['c']) != 0
        assert report['samples'] > 0

    @pytest.mark.parametrize('p', [1, 2, 3])
    def test_pin(self, shapovalov_sl21, p):
        assert shapovalov_sl21.man_identity('a+b', 'a', p, f'pairings:a={p},b=0', Side.PIN)

    @pytest.mark.parametrize('p', [1, 2, 3])
    def test_pun(self, shapovalov_sl21, p):
        assert shapovalov_sl21.man_identity('a+b', 'a', p, f'pairings:a={p},a+b=0', 'pun')

    def test_pin_requires_matching_p(self, shapovalov_sl21):
        with pytest.raises(PreconditionViolated):
            shapovalov_sl21.man_identity('a+b', 'a', 2, 'pairings:a=1,b=0', Side.PIN)

    def test_pun_requires_hyperplane(self, shapovalov_sl21):
        with pytest.raises(PreconditionViolated):
            shapovalov_sl21.man_identity('a+b', 'a', 1, 'pairings:a=1,b=0', Side.PUN)

    def test_pun_needs_positive_p(self, shapovalov_sl21):
        with pytest.raises(PreconditionViolated):
            shapovalov_sl21.man_identity('a+b', 'a', 0, 'pairings:a=0,a+b=0', Side.PUN)

    def test_pair_must_be_orthogonal(self, shapovalov_sl21, generic_on_b):
        with pytest.raises(NotOrthogonalIsotropic):
            shapovalov_sl21.kt_report('a+b', 'b', generic_on_b)


@pytest.mark.slow
class TestOrthogonalPair:

    def test_ratio_is_consistent(self, gl22_pair_weight):
        service = services.shapovalov_service('gl(2|2)', seed=0)
        report = service.kt_report('a+b+c', 'b', gl22_pair_weight)
        assert Fraction(report['ratio']) != 0
        if report['coefficient_ratio'] is not None:
            assert report['coefficient_ratio'] == report['ratio']


class TestRepository:

    def test_round_trip(self, tmp_path):
        service = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        theta = service.compute_shapovalov('a+b')
        assert service.repository.count() == 1

        fresh = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        loaded = fresh.repository.find(theta.algebra, theta.borel, theta.gamma, 1, theta.ordering, theta.method)
        assert loaded.coeffs == theta.coeffs
        assert loaded.method is Method.SOLVE_INTERPOLATE
        assert fresh.compute_shapovalov('a+b').coeffs == theta.coeffs

    def test_methods_are_stored_apart(self, tmp_path):
        service = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        service.compute_shapovalov('a+b', 1, Method.SOLVE_INTERPOLATE)

        fresh = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        theta = fresh.compute_shapovalov('a+b', 1, Method.RECURSION)
        assert theta.method is Method.RECURSION
        assert fresh.repository.count() == 2
        assert fresh.methods_agree('a+b')

    def test_corrupt_entry_is_ignored(self, tmp_path):
        service = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        theta = service.compute_shapovalov('a+b')
        path = next(tmp_path.glob('*.json'))
        path.write_text('{not json', encoding='utf-8')

        fresh = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        assert fresh.repository.find(theta.algebra, theta.borel, theta.gamma, 1, theta.ordering,
                                     theta.method) is None
        assert fresh.compute_shapovalov('a+b').coeffs == theta.coeffs
        assert fresh.repository.count() == 1

    def test_delete(self, tmp_path):
        service = services.shapovalov_service('sl(3)', seed=0, cache_dir=str(tmp_path))
        theta = service.compute_shapovalov('a')
        key = service.repository.key_for(theta.algebra, theta.borel, theta.gamma, 1, theta.ordering,
                                         theta.method)
        assert service.repository.delete(key)
        assert not service.repository.delete(key)
