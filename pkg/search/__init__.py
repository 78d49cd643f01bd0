"""Enumeration of cover matrices and Prym data up to symmetry."""
