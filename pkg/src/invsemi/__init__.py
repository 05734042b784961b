"""Exact computational toolkit for inverse semigroups."""
