"""Relations among multiple L-values at roots of unity.

Modules: ``algebra`` (words and polynomials), ``linmaps`` (linear maps),
``hproducts`` (harmonic products), ``derivations`` (derivation operators),
``relations`` (relation families and exact ranks), ``seqnum`` (truncated sums,
Newton and power series, numerics), ``suites`` (randomized identity checks)
and ``cli``.
"""

__version__ = "0.1.0"
