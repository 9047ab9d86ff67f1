"""Exact wall-crossing computations for variation of GIT.

Submodules:
  lattice  exact integer/rational linear algebra and cone tests
  toric    secondary fans, wall crossings and decomposition trees
  orlov    the Landau-Ginzburg model of a graded complete intersection
  curves   weighted points on P^1 and Fulton-MacPherson abyss paths
  report   problem files, dispatch and report emission
  cli      the ``gkz`` command
"""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .lattice import Membership, cone_member, kernel_basis, smith  # noqa: E402,F401
from .toric import (GitProblem, exceptional_collection, flatten,  # noqa: E402,F401
                    generic_path, k0_rank, validate, wall_crossing)
