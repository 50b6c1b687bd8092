# src/utils/__init__.py
"""
Shared utilities: logging, configuration, errors and seeded randomness.
"""
