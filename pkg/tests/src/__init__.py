"""
Test suite for src module
"""

