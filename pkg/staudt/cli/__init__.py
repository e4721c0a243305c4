"""Command line front end for staudt."""
