"""Catalog records and the newline-delimited catalog file."""
