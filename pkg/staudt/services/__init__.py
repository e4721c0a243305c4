"""Services for staudt."""
