"""HTTP service wrapping the toolkit, plus the shared request/response models."""

from .app import app, create_app
from .handlers import ServiceError

__all__ = ["app", "create_app", "ServiceError"]
