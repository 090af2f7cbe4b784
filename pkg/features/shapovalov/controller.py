"""
Šapovalov element controller following Controller Pattern.

Handles HTTP requests for computing θ_{γ,m} and running its checks.
"""
from core.base_controller import BaseController
from shared.models import Method


class ShapovalovController(BaseController):
    """Šapovalov element endpoints."""

    def __init__(self, factory):
        super().__init__(factory, 'shapovalov', '/api/shapovalov')

    def register_routes(self):

        @self.blueprint.route('/compute', methods=['POST'])
        @self.handle_request
        def compute():
            """Compute θ_{γ,m}."""
            data = self.get_json_data(required_fields=['algebra', 'gamma'])
            service = self.service_for(data)
            theta = service.compute_shapovalov(
                data['gamma'], self.get_int(data, 'm', 1),
                Method(data.get('method', Method.SOLVE_INTERPOLATE.value)))
            return self.success_response(data=service.describe(theta))

        @self.blueprint.route('/verify', methods=['POST'])
        @self.handle_request
        def verify():
            """Defining property and degree report."""
            data = self.get_json_data(required_fields=['algebra', 'gamma'])
            service = self.service_for(data)
            theta = service.compute_shapovalov(data['gamma'], self.get_int(data, 'm', 1))
            report = service.verify_defining_property(theta)
            report['degrees'] = service.degree_report(theta).to_dict()
            return self.success_response(data=report)

        @self.blueprint.route('/square', methods=['POST'])
        @self.handle_request
        def square():
            """θ_γ(λ-γ)θ_γ(λ) = 0 on H_γ."""
            data = self.get_json_data(required_fields=['algebra', 'gamma'])
            service = self.service_for(data)
            return self.success_response(data={'vanishes': service.square_check(data['gamma'])})

        @self.blueprint.route('/chain-compare', methods=['POST'])
        @self.handle_request
        def chain_compare():
            """Comparison of θ_γ with the product along an odd-reflection chain."""
            data = self.get_json_data(required_fields=['algebra', 'gamma'])
            service = self.service_for(data)
            return self.success_response(data=service.borel_chain_compare(
                data['gamma'], count=self.get_int(data, 'samples', 20)))

        @self.blueprint.route('/man', methods=['POST'])
        @self.handle_request
        def man():
            """The pin and pun identities with θ_{α,p}."""
            data = self.get_json_data(required_fields=['algebra', 'gamma', 'alpha', 'p', 'lambda', 'side'])
            service = self.service_for(data)
            holds = service.man_identity(data['gamma'], data['alpha'], self.get_int(data, 'p'),
                                         data['lambda'], data['side'])
            return self.success_response(data={'holds': holds})

        @self.blueprint.route('/kt', methods=['POST'])
        @self.handle_request
        def kt():
            """Ratio of θ_{γ'}θ_γ v_λ to θ_γθ_{γ'} v_λ."""
            data = self.get_json_data(required_fields=['algebra', 'gamma', 'gamma_prime', 'lambda'])
            service = self.service_for(data)
            report = service.kt_report(data['gamma'], data['gamma_prime'], data['lambda'])
            if data.get('xi'):
                report['bad_parameters'] = service.bad_parameters(
                    data['lambda'], data['xi'], data['gamma'], data['gamma_prime'])
            return self.success_response(data=report)

        @self.blueprint.route('/oracle', methods=['POST'])
        @self.handle_request
        def oracle():
            """θ against brute-force singular vectors at generic points."""
            data = self.get_json_data(required_fields=['algebra', 'gamma'])
            service = self.service_for(data)
            return self.success_response(data=service.oracle_check(
                data['gamma'], self.get_int(data, 'm', 1), self.get_int(data, 'samples', 10)))
