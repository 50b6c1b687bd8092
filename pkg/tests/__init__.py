# tests/__init__.py
"""
Test suite for the ECDLP challenge ladder.
"""
