"""
Jantzen filtration controller following Controller Pattern.

Handles HTTP requests for layers, sum formulas and M^X dimensions.
"""
from core.base_controller import BaseController
from features.jantzen.service import FILTRATION, MX


class JantzenController(BaseController):
    """Jantzen filtration endpoints."""

    def __init__(self, factory):
        super().__init__(factory, 'jantzen', '/api/jantzen')

    def register_routes(self):

        @self.blueprint.route('/layers', methods=['POST'])
        @self.handle_request
        def layers():
            """Layer dimensions at every η up to depth."""
            data = self.get_json_data(required_fields=['algebra', 'lambda'])
            service = self.service_for(data)
            cfg = service.choose_deformation(FILTRATION, xi=data.get('xi'))
            table = service.layer_table(data['lambda'], self.get_int(data, 'depth', 4), cfg)
            return self.success_response(data={
                'deformation': cfg.to_dict(),
                'layers': service.describe_layers(table),
            })

        @self.blueprint.route('/sum', methods=['POST'])
        @self.handle_request
        def sum_formula():
            """Sum formula report."""
            data = self.get_json_data(required_fields=['algebra', 'lambda'])
            service = self.service_for(data)
            cfg = service.choose_deformation(FILTRATION, xi=data.get('xi'))
            report = service.sum_formula_report(data['lambda'], self.get_int(data, 'depth'), cfg)
            return self.success_response(data=report.to_dict())

        @self.blueprint.route('/mx-dims', methods=['POST'])
        @self.handle_request
        def mx_dims():
            """Weight-space dimensions of M^X(λ)."""
            data = self.get_json_data(required_fields=['algebra', 'lambda', 'X'])
            service = self.service_for(data)
            cfg = service.choose_deformation(MX, data['X'], xi=data.get('xi'))
            return self.success_response(data=service.mx_weight_dims(
                data['lambda'], data['X'], self.get_int(data, 'depth'), cfg))

        @self.blueprint.route('/probe', methods=['POST'])
        @self.handle_request
        def probe():
            """Specialized kernel against U(g)θ_γ v_λ."""
            data = self.get_json_data(required_fields=['algebra', 'lambda', 'gamma'])
            service = self.service_for(data)
            return self.success_response(data=service.strict_kernel_probe(
                data['lambda'], data['gamma'], self.get_int(data, 'depth')))

        @self.blueprint.route('/pig', methods=['POST'])
        @self.handle_request
        def pig():
            """Sum formula and valuation bound for two orthogonal isotropic roots."""
            data = self.get_json_data(required_fields=['algebra', 'lambda', 'gamma', 'gamma_prime'])
            service = self.service_for(data)
            return self.success_response(data=service.pig_check(
                data['lambda'], data['gamma'], data['gamma_prime'], self.get_int(data, 'depth')))
