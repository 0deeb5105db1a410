"""Gaussian primes plus powers of 1+i: exact series, certified constants, density scans."""

__version__ = "0.1.0"
