"""Services package for suspzeta."""

from .config import config

__all__ = ["config"]
