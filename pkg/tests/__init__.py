"""Tests for kszforms."""
