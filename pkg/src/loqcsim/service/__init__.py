"""HTTP service wrapping the scenario runner and circuit interpreter."""

from .api import create_app

__all__ = ["create_app"]
