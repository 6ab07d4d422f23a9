"""Main Test Suite."""
