"""HTTP service wrapping the solver: FastAPI app, schemas, and document builders."""
from .app import app, create_app

__all__ = ["app", "create_app"]
