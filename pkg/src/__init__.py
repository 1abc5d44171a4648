"""
Laboratorio de evoluciones de Loewner — geometría universal.
Series truncadas, matrices de Grunsky, operadores de Virasoro,
flujos de Loewner/SLE y verificación Monte Carlo de martingalas.
"""

__version__ = "0.1.0"
