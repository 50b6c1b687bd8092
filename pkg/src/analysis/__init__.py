# src/analysis/__init__.py
"""
Analysis module for classical and quantum cost models and bundled datasets.
"""
