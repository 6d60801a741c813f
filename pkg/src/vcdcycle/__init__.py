"""Exact-arithmetic cycles at the virtual cohomological dimension of SL_n(Z).

Subpackages: exact rational linear algebra (`exactq`), rational LP (`lp`),
double description (`dd`), point-configuration combinatorics (`polytope`),
the sharbly complex (`sharbly`), perfect forms and tiles (`voronoi`), cycle
assembly and boundary certificates (`cycle`), the cocycle-side positivity
certificates (`cosharbly`), certificate files (`certs`), and the CLI
(`cli`).
"""

__version__ = "0.1.0"
