"""pwb: an exact workbench for quadratic Poisson structures on polynomial rings.

The most-used entry points are re-exported here; the submodules hold the rest
(`pwb.solver`, `pwb.series`, `pwb.envelope`, `pwb.formats`, ...).
"""

from .brackets import PoissonAlgebra, PoissonDerivation
from .families import (homogenized_weyl, jacobian, jacobian_pq, lie_one_dim_ideals,
                       ph_lie, quantum_matrices, skew_symmetric, weyl)
from .fixedrings import fixed_cyclic_reflection, fixed_group, is_skew_presentation, rigidity_report
from .linalg import Matrix
from .rings import Poly, PolyRing
from .scalars import Cyclo, rational, zeta
from .symmetry import (GradedMap, classify, find_reflections, group_closure,
                       is_poisson_automorphism, molien_series, trace_series)

__version__ = "0.1.0"
