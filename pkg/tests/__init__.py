"""
Test suite for line_arrangement_workbench
"""
