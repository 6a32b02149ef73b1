"""Test suite for oneleg."""
