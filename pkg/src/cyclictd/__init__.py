"""cyclictd: exact arithmetic for cyclic tridiagonal operator pairs at roots of unity."""

__version__ = "0.1.0"
