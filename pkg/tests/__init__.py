"""Tests for dimdial."""
