"""
Root data controller.

Serves the root system of a preset algebra.
"""
from flask import request

from core.base_controller import BaseController


class RootDataController(BaseController):
    """Root data endpoints."""

    def __init__(self, factory):
        super().__init__(factory, 'rootdata', '/api/rootdata')

    def register_routes(self):

        @self.blueprint.route('/roots', methods=['GET'])
        @self.handle_request
        def roots():
            """Positive roots, simple basis, ρ and the form table."""
            rs = self.service_for(request.args)
            return self.success_response(data=rs.to_dict())
