"""Amalgamated free products of finite groups, small cancellation quotients,
Bass-Serre and Cayley-Abels balls, and exact filling norms."""
from .groups import FiniteGroup, make_group, cyclic_group, subgroup_closure, check_hom
from .amalgam import AmalgamContext, Letter, modular_context, normal_form
from .smallcancel import symmetrize, check_cprime, dehn_reduce, is_trivial_in_quotient
from .chains import RationalChain, SparseRationalMatrix, TwoComplexBall, chain_homotopy_check
from .geometry import bass_serre_ball, cayley_abels_ball, presentation_complex_ball, four_point_delta
from .filling import filling_norm, isoperimetric_scan, zero_dim_distortion
