"""Monotone metric embeddings, sphericity certificates and spectral graph tools."""
from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
