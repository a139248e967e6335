"""
Tests for enumeration module.
"""
