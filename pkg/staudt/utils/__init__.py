"""Utilities for staudt."""
