"""Utility modules for pairwalk"""

__version__ = "1.0.0"
