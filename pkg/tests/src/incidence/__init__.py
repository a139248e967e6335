"""
Tests for incidence module.
"""
