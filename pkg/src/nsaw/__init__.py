"""Nonsymmetric Askey-Wilson polynomials as vector-valued polynomials.

Exact rational verification of the operator identities, orthogonality
relations and positivity claims, plus numerical checks of the limit
transitions down to nonsymmetric Jacobi polynomials and Bessel functions.
"""

__version__ = "0.1.0"
