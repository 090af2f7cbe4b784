import pytest

from features import services
from features.verma.service import T
from shared.exceptions import NotOrthogonalIsotropic


@pytest.fixture
def verma_sl2():
    return services.verma_service('sl(2)')


@pytest.fixture
def verma_sl21():
    return services.verma_service('sl(2|1)')


class TestPartitions:

    def test_sl2_one_partition_per_level(self, verma_sl2):
        for k in range(5):
            assert verma_sl2.partitions((k,)) == [(k,)]

    def test_isotropic_roots_used_once(self, verma_sl21):
        rs = verma_sl21.rs
        assert len(verma_sl21.partitions(rs.simple_coefficients(rs.parse_root('a+b')))) == 2
        assert len(verma_sl21.partitions((1, 2))) == 1
        assert verma_sl21.partitions((0, 2)) == []

    def test_excluded_root(self, verma_sl21):
        b = verma_sl21.rs.parse_root('b')
        dims = [len(verma_sl21.partitions(eta, [b])) for eta in [(0, 0), (0, 1), (1, 0), (1, 1)]]
        assert dims == [1, 0, 1, 1]

    def test_negative_offset_is_empty(self, verma_sl21):
        assert verma_sl21.partitions((-1, 0)) == []

    def test_enumeration_is_deterministic(self, verma_sl21):
        first = verma_sl21.partitions((2, 2))
        second = services.verma_service('sl(2|1)').partitions((2, 2))
        assert first == second


class TestCharacters:

    def test_character_matches_partitions(self, verma_sl21):
        character = verma_sl21.p_x_character([], 4)
        for eta, count in character.table.items():
            assert count == len(verma_sl21.partitions(eta))

    @pytest.mark.parametrize('gamma', ['b', 'a+b'])
    def test_additivity(self, verma_sl21, gamma):
        report = verma_sl21.character_additivity(verma_sl21.rs.parse_root(gamma), 4)
        assert report['holds']
        assert report['failures'] == []

    @pytest.mark.slow
    @pytest.mark.parametrize('algebra', ['sl(3)', 'sl(4)', 'sl(2|1)', 'sl(2|2)', 'gl(2|2)', 'osp(2|4)'])
    def test_additivity_through_height_eight(self, algebra):
        service = services.verma_service(algebra)
        character = service.p_x_character([], 8)
        assert character.coefficient((0,) * len(service.rs.simple)) == 1
        for gamma in service.rs.isotropic_positive:
            report = service.character_additivity(gamma, 8)
            assert report['holds'], (service.rs.root_name(gamma), report['failures'])

    def test_excluded_set_must_be_orthogonal(self, verma_sl21):
        rs = verma_sl21.rs
        with pytest.raises(NotOrthogonalIsotropic):
            verma_sl21.p_x_character([rs.parse_root('b'), rs.parse_root('a+b')], 2)

    def test_lattice_points_sl2(self, verma_sl2):
        assert verma_sl2.lattice_points(3) == [(0,), (1,), (2,), (3,)]


class TestSingularVectors:

    def test_f_squared_is_singular(self, verma_sl2):
        weight = verma_sl2.rs.parse_weight('h_a=1')
        assert verma_sl2.singular_vectors(weight, (1,)) == []
        vectors = verma_sl2.singular_vectors(weight, (2,))
        assert len(vectors) == 1
        assert set(vectors[0]) == {(2,)}

    def test_generic_weight_has_none(self, verma_sl2):
        weight = verma_sl2.rs.parse_weight('pairings:a=1/2')
        for k in (1, 2, 3):
            assert verma_sl2.singular_vectors(weight, (k,)) == []

    def test_odd_simple_root_on_hyperplane(self, verma_sl21, generic_on_b):
        rs = verma_sl21.rs
        weight = rs.parse_weight(generic_on_b)
        vectors = verma_sl21.singular_vectors(weight, rs.simple_coefficients(rs.parse_root('b')))
        assert len(vectors) == 1


class TestGramMatrix:

    def test_sl2_entries(self, verma_sl2):
        rs = verma_sl2.rs
        weight = rs.parse_weight('pairings:a=2')
        gram = verma_sl2.gram_matrix(weight, rs.rho, (1,))
        assert gram.size == 1
        assert gram.entries[0][0] == 1 + T
        gram = verma_sl2.gram_matrix(weight, rs.rho, (2,))
        assert gram.entries[0][0] == 2 * T * (1 + T)

    def test_top_weight_space(self, verma_sl2):
        rs = verma_sl2.rs
        gram = verma_sl2.gram_matrix(rs.parse_weight('h_a=0'), rs.rho, (0,))
        assert gram.entries == [[1]]

    def test_basis_follows_partitions(self, verma_sl21):
        rs = verma_sl21.rs
        gram = verma_sl21.gram_matrix(rs.parse_weight('pairings:a=1,b=0'), rs.rho, (1, 1))
        assert gram.size == 2
        assert gram.basis == verma_sl21.partitions((1, 1))
