"""Small dominating sets in plane triangulations of maximum degree 6."""

__version__ = "0.1.0"
