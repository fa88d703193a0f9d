"""Version information for dimdial."""

__version__ = "0.3.0"
