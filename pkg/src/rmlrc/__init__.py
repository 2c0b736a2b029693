"""Optimal locally repairable codes from Gabidulin precoding and MDS array codes."""
from ._kernels import BACKEND
from .errors import *  # noqa: F401,F403
from .gabidulin import GabidulinCode, rank_distance
from .gf import BaseField, ExtField, base_field, get_field
from .linpoly import LinearizedPoly, lp_eval, lp_interpolate
from .lrc import (CodeParams, Codeword, ErasurePattern, LocallyRepairableCode,
                  derive_params, dmin_bound, dmin_scalar_bound, dmin_single_parity_bound)
from .mds import MdsLayer, NodeBlock, mds_build, mds_encode, mds_repair

__version__ = "0.1.0"
