# src/ladder/__init__.py
"""
Challenge-card construction and verification.
"""
