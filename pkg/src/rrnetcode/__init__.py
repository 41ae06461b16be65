"""Linear network codes from Riemann-Roch spaces on curves over finite fields."""

__version__ = "0.1.0"
