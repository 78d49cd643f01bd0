"""Utility functions for prymscope."""
