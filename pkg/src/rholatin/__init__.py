"""Completion of rho-latin rectangles: flow decision, amalgamation/detachment construction,
subset-condition evaluators and a brute-force oracle."""

from .certificates import Infeasible, SubsetCertificate
from .completion import complete, complete_hall, generate_square
from .conditions import (
    FittingSequence,
    corollary_checks,
    enumerate_fitting,
    hall_conditions,
    remark42_conditions,
    ryser_conditions,
    ryser_theorem_check,
)
from .core import (
    MuStats,
    Rectangle,
    RhoProfile,
    Square,
    is_completion_of,
    monus,
    mu,
    necessary_bound,
    p_sets,
    validate_profile,
    validate_rectangle,
    validate_square,
)
from .errors import *  # noqa: F401,F403
from .factors import DegreeSpec, find_f_factor, find_gf_factor, find_theta, gf_condition, ore_condition
from .graphs import ColoredBigraph, amalgamate, build_F, build_gamma, induced_sides
from .detachment import detach_to_square, split_vertex
from .guards import Guards, load_guards
from .oracle import InstanceParams, brute_force_complete, count_completions, random_instance

__version__ = "0.1.0"
