"""
Tests for mechanism implementations.

This package contains tests for the various mechanisms,
including a stub mechanism for testing the axiom checks in isolation.
"""

# This file ensures the directory is treated as a package
# Actual path setup is done in the parent test/__init__.py file
