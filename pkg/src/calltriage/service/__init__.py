from .app import create_app
from .processor import CallProcessor

__all__ = ["create_app", "CallProcessor"]
