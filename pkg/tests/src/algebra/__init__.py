"""
Tests for algebra module.
"""
