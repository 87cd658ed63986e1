from .brute import all_minimum_solutions, brute_force, domination_number, independence_number, min_vertex_cover
from .cw_dp import cw_dp, default_threshold, minimum_threshold
from .dispatch import chordal_solve, solve
from .result import SolveResult
from .saturation import SaturationMap, lift_solution, saturate
from .search import branch_and_bound
from .tw_dp import tw_dp, tw_solve
