"""
Tests for moduli module.
"""
