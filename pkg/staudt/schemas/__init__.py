"""Report models for staudt."""
