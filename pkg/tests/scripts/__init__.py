"""
Test suite for scripts
"""

