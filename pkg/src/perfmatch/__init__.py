"""Exact weighted perfect-matching counting."""
