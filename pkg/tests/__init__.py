"""Tests for staudt."""
