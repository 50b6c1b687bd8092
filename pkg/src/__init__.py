# src/__init__.py
"""
ECDLP challenge ladder: card generation, verification, solvers and cost models.
"""

__version__ = '0.1.0'
