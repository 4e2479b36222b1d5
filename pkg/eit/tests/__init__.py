"""Test suite for eit."""
