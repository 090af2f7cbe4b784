"""
Verma module controller following Controller Pattern.

Handles HTTP requests for partitions, characters, singular vectors and
Gram matrices.
"""
from core.base_controller import BaseController


class VermaController(BaseController):
    """Verma module endpoints."""

    def __init__(self, factory):
        super().__init__(factory, 'verma', '/api/verma')

    def register_routes(self):

        @self.blueprint.route('/partitions', methods=['POST'])
        @self.handle_request
        def partitions():
            """Partitions of η avoiding X."""
            data = self.get_json_data(required_fields=['algebra', 'eta'])
            service = self.service_for(data)
            eta = service.lattice(data['eta'])
            found = service.partitions(eta, service.roots(data.get('X')))
            return self.success_response(data={
                'eta': list(eta),
                'count': len(found),
                'partitions': [service.describe_partition(pi) for pi in found],
            })

        @self.blueprint.route('/character', methods=['POST'])
        @self.handle_request
        def character():
            """Truncated p_X and the additivity identity for isotropic γ."""
            data = self.get_json_data(required_fields=['algebra'])
            service = self.service_for(data)
            depth = self.get_int(data, 'depth', 6)
            result = service.p_x_character(service.roots(data.get('X')), depth).to_dict()
            if data.get('gamma'):
                result['additivity'] = service.character_additivity(
                    service.positive_root(data['gamma']), depth)
            return self.success_response(data=result)

        @self.blueprint.route('/singular', methods=['POST'])
        @self.handle_request
        def singular():
            """Singular vectors of M(λ) at λ - η."""
            data = self.get_json_data(required_fields=['algebra', 'lambda', 'eta'])
            service = self.service_for(data)
            vectors = service.singular_vectors(service.weight(data['lambda']), service.lattice(data['eta']))
            return self.success_response(data=[service.describe_vector(v) for v in vectors])

        @self.blueprint.route('/gram', methods=['POST'])
        @self.handle_request
        def gram():
            """Gram matrix of the contravariant form on M(λ+Tξ)^{λ+Tξ-η}."""
            data = self.get_json_data(required_fields=['algebra', 'lambda', 'eta'])
            service = self.service_for(data)
            weight = service.weight(data['lambda'])
            xi = service.weight(data['xi']) if data.get('xi') else service.rs.rho
            matrix = service.gram_matrix(weight, xi, service.lattice(data['eta']))
            return self.success_response(data=matrix.to_dict())
