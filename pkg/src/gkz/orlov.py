"""Gauged Landau-Ginzburg model of a graded complete intersection.

Only the degrees of the defining equations enter; the equations themselves
are never represented.
"""

from dataclasses import dataclass

from . import lattice
from .errors import InternalMismatch
from .toric import GitProblem, validate, wall_crossing

SIGMA_SIDE_LARGER = "SigmaSideLarger"
EQUIVALENCE = "Equivalence"
LG_SIDE_LARGER = "LGSideLarger"

SIGMA_SIDE = "P^{n-1} complete intersection side"
LG_SIDE = "graded singularity category side"


@dataclass(frozen=True)
class CISpec:
    n: int
    degrees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 1:
            raise ValueError("need at least one variable")
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be positive")


@dataclass(frozen=True)
class OrlovReport:
    a: int
    case: str
    sigma_side_objects: tuple
    lg_side_objects: tuple
    engine_mu: int
    sigma_side: str = SIGMA_SIDE
    lg_side: str = LG_SIDE


def build_lg(spec: CISpec):
    """The rank-two problem: x_i of weight (1, 0), u_j of weight (-d_j, 1).

    The second coordinate is the R-charge; the potential ``sum u_j f_j``
    has character (0, 1), which the wall's one-parameter subgroup fixes.

    Returns:
      ``(problem, lam, potential_character)``.
    """
    cols = [(1, 0)] * spec.n + [(-d, 1) for d in spec.degrees]
    P = GitProblem(2, tuple(cols))
    lam = (1, 0)
    potential = (0, 1)
    assert lattice.dot(potential, lam) == 0
    return P, lam, potential


def orlov_report(spec: CISpec, d: int = 0) -> OrlovReport:
    a = spec.n - sum(spec.degrees)
    P, lam, _ = build_lg(spec)
    validate(P)
    mu = wall_crossing(P, lam).mu
    if mu != a:
        raise InternalMismatch(f"closed form a={a} but engine mu={mu}")
    if a > 0:
        case = SIGMA_SIDE_LARGER
        sigma = tuple(f"O_Y({k})" for k in range(d, a + d))
        lg = ()
    elif a < 0:
        case = LG_SIDE_LARGER
        sigma = ()
        # k(-d), ..., k(a - d + 1): |a| labels counting down.
        lg = tuple(f"k({k})" for k in range(-d, a - d, -1))
    else:
        case = EQUIVALENCE
        sigma = lg = ()
    return OrlovReport(a, case, sigma, lg, mu)
