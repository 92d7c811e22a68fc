"""Dixmier map for nilpotent Lie superalgebras."""
