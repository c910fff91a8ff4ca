"""
Endpoint layer for dymotif.

Clients are in ``dymotif.api.client``; they depend on ``dymotif.config``,
which reads its defaults from ``dymotif.api.constants``.
"""
from .constants import API_KEY_ENV, DEFAULT_MODEL, DEFAULT_PROVIDER, PROVIDERS
from .models import Completion

__all__ = ["API_KEY_ENV", "Completion", "DEFAULT_MODEL", "DEFAULT_PROVIDER", "PROVIDERS"]
