"""Coprime networks of composite numbers."""

__version__ = "0.1.0"

from .numtheory import SieveTable, build_sieve, factor_signature, partial_totient  # noqa: E402
from .network import CoprimeNetwork, build_network  # noqa: E402

__all__ = [
    "__version__",
    "SieveTable",
    "build_sieve",
    "factor_signature",
    "partial_totient",
    "CoprimeNetwork",
    "build_network",
]
