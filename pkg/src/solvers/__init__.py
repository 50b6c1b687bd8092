# src/solvers/__init__.py
"""
Classical discrete-log solvers for challenge cards.
"""
