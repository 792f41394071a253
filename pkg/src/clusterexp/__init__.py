"""Cluster-expansion machinery with brute-force cross-verification.

Modules
-------
graphs      labelled graphs, Pruefer trees, partition schemes and their verifier
ursell      connected-graph coefficients by three independent formulas
potentials  pair-potential families, stability search and classification
mayer       discrete-volume coefficients, classical bounds, virial toolbox
polymer     abstract polymer gas, convergence criteria, bound catalog
ising       2D Ising sums, both polymer expansions, duality, thresholds
hardsphere  overlap integrals and the improved planar radius bound
cli         command-line interface over all of the above
"""

from . import graphs, hardsphere, ising, mayer, polymer, potentials, ursell

__version__ = "0.1.0"

__all__ = [
    "graphs",
    "ursell",
    "potentials",
    "mayer",
    "polymer",
    "ising",
    "hardsphere",
    "__version__",
]
