"""End-to-end tests for dimdial."""
