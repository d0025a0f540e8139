"""Po-leader boundary labelling: exact solvers for ports on up to four sides."""
from .foursided import solve_four_sided
from .geom import (
    Instance,
    Leader,
    Point,
    Port,
    Rect,
    Side,
    Site,
    Solution,
    VerificationReport,
    check_xy_separable,
    leader_for,
    leaders_cross,
    verify_solution,
)
from .onesided import OneSidedProblem, solve_one_sided, solve_one_sided_constrained, solve_two_sided_adjacent
from .oracle import oracle_feasible, oracle_solve
from .solvers import SOLVERS, solve_auto
from .threesided import solve_three_sided

__all__ = [
    "Instance", "Leader", "Point", "Port", "Rect", "Side", "Site", "Solution", "VerificationReport",
    "check_xy_separable", "leader_for", "leaders_cross", "verify_solution",
    "OneSidedProblem", "solve_one_sided", "solve_one_sided_constrained", "solve_two_sided_adjacent",
    "solve_three_sided", "solve_four_sided", "solve_auto", "SOLVERS", "oracle_solve", "oracle_feasible",
]
