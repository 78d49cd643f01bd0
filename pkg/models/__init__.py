"""Data models for prymscope: residues, covers, Prym data and certificates."""
