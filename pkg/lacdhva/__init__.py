"""
Landau-Aharonov-Casher levels and zero-temperature de Haas-van Alphen
oscillations of neutral atoms in a synthetic gauge field
"""

__version__ = "1.0.0"
