"""
Tests for realization module.
"""
