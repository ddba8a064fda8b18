"""Double circulant even codes: construction, weight distributions, classification."""

__version__ = "0.1.0"
