"""
HTTP entry point following SOLID principles.

Assembles the feature controllers and initializes the Flask application.
"""
import logging

from flask import Flask, jsonify
from flask_cors import CORS

from shared.config import Config
from shared.exceptions import AppException

from features import services

from features.jantzen.controller import JantzenController
from features.rootdata.controller import RootDataController
from features.shapovalov.controller import ShapovalovController
from features.verma.controller import VermaController

logger = logging.getLogger(__name__)

VERSION = '1.0.0'


def create_app():
    """
    Application factory - Dependency Injection Pattern.

    Creates and configures the Flask application with all dependencies.
    """
    app = Flask(__name__)
    app.config['DEBUG'] = Config.DEBUG

    CORS(app)

    Config.configure_logging()
    Config.validate()
    logger.info("Configuration validated")

    # Initialize controllers
    controllers = [
        RootDataController(services.root_system),
        VermaController(services.verma_service),
        ShapovalovController(services.shapovalov_service),
        JantzenController(services.jantzen_service),
    ]

    # Register routes and blueprints
    for controller in controllers:
        controller.register_routes()
        app.register_blueprint(controller.blueprint)

    @app.route('/health')
    def health():
        """Health check endpoint for monitoring."""
        return jsonify({'status': 'healthy', 'cache': bool(Config.CACHE_DIR)}), 200

    @app.route('/api')
    def api_info():
        """API information endpoint."""
        return jsonify({
            'name': 'theta-forge API',
            'version': VERSION,
            'endpoints': {
                'rootdata': '/api/rootdata',
                'verma': '/api/verma',
                'shapovalov': '/api/shapovalov',
                'jantzen': '/api/jantzen',
            }
        })

    @app.errorhandler(AppException)
    def handle_app_exception(error):
        """Handle custom application exceptions."""
        return jsonify({
            'success': False,
            'error': error.message
        }), error.status_code

    @app.errorhandler(404)
    def not_found(error):
        return jsonify({
            'success': False,
            'error': 'Resource not found'
        }), 404

    @app.errorhandler(500)
    def internal_error(error):
        logger.error("Internal server error: %s", error)
        return jsonify({
            'success': False,
            'error': 'Internal server error'
        }), 500

    logger.info("Application initialized")
    return app


if __name__ == '__main__':
    app = create_app()
    app.run(
        host='0.0.0.0',
        port=Config.PORT,
        debug=Config.DEBUG
    )
