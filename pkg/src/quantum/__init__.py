# src/quantum/__init__.py
"""
Classical simulation of quantum discrete-log sampling.
"""
