# src/ec_core/__init__.py
"""
Prime-field arithmetic and the group law for y^2 = x^3 + 7.
"""
