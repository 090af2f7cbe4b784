"""
Base controller implementation following Controller Pattern and SOLID principles.

Provides abstract base class for all controller/route implementations.
Handles HTTP concerns and delegates to service layer.
"""
import logging
from abc import ABC, abstractmethod
from functools import wraps
from typing import Any, Callable, Dict, List, Optional

from flask import Blueprint, jsonify, request

from core.interfaces import APIResponse
from shared.exceptions import AppException, ValidationError

logger = logging.getLogger(__name__)


class BaseController(ABC):
    """
    Abstract base controller - Open/Closed Principle.

    Provides common HTTP handling while allowing specific implementations.
    Every request names its algebra, so the controller builds a service per
    request from ``factory``; contexts are cached underneath.
    """

    def __init__(self, factory: Callable[[str], Any], blueprint_name: str, url_prefix: str):
        """
        Initialize controller with a service factory - Dependency Inversion.

        Args:
            factory: Builds the service for an algebra string
            blueprint_name: Name for Flask blueprint
            url_prefix: URL prefix for all routes (e.g., '/api/jantzen')
        """
        self.factory = factory
        self.blueprint = Blueprint(blueprint_name, __name__, url_prefix=url_prefix)

    @abstractmethod
    def register_routes(self) -> None:
        """Attach the feature's routes to ``self.blueprint``."""

    def service_for(self, data: Dict[str, Any]):
        if not data.get('algebra'):
            raise ValidationError("Missing required field: algebra")
        return self.factory(data['algebra'])

    def handle_request(self, handler_func):
        """
        Decorator for consistent error handling across routes - DRY Principle.

        AppException subclasses keep their own status code; anything else is
        logged and reported as an internal error.
        """
        @wraps(handler_func)
        def wrapper(*args, **kwargs):
            try:
                result = handler_func(*args, **kwargs)

                if isinstance(result, tuple):
                    return result

                return self.success_response(data=result)

            except AppException as e:
                logger.info("%s failed: %s", handler_func.__name__, e.message)
                return self.error_response(e.message, e.status_code)

            except ValueError as e:
                # Enum and Fraction parsing
                return self.error_response(str(e), 400)

            except Exception:
                logger.exception("Unexpected error in %s", handler_func.__name__)
                return self.error_response('Internal server error', 500)

        return wrapper

    def get_json_data(self, required_fields: Optional[List[str]] = None) -> dict:
        """
        Get and validate JSON data from request - DRY Principle.

        Raises:
            ValidationError: If the body is not JSON or required fields are missing
        """
        data = request.get_json(silent=True)

        if not data:
            raise ValidationError("Request body must be valid JSON")

        if required_fields:
            missing = [field for field in required_fields if field not in data]
            if missing:
                raise ValidationError(f"Missing required fields: {', '.join(missing)}")

        return data

    @staticmethod
    def get_int(data: Dict[str, Any], key: str, default: Optional[int] = None) -> Optional[int]:
        value = data.get(key, default)
        if value is None:
            return None
        try:
            return int(value)
        except (TypeError, ValueError) as e:
            raise ValidationError(f"{key} must be an integer") from e

    def success_response(self, data=None, message=None):
        """
        Create success response - DRY Principle.

        Returns:
            Tuple of (response, status_code)
        """
        return jsonify(APIResponse(True, data=data, message=message).to_dict()), 200

    def error_response(self, error: str, status_code: int = 400):
        return jsonify(APIResponse(False, error=error).to_dict()), status_code
