"""staudt package."""
