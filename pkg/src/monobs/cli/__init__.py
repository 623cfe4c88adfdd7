"""Command-line interface for monobs."""
