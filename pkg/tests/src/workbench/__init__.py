"""
Tests for workbench module.
"""
