"""HTTP service exposing the entanglement computations.

Run with ``uvicorn geoment.service:app`` or ``geoment serve``.
"""

from .app import app, create_app

__all__ = ["app", "create_app"]
