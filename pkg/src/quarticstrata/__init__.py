"""Apolarity, Betti strata of quaternary quartics and the Hilbert-scheme machinery behind them."""

from .apolarity import apolar_ideal, catalecticant, classify, quadratic_part, quartic
from .gfp import DEFAULT_PRIME
from .groebner import Ideal, MonomialIdeal, buchberger
from .poly import PolyRing, contract
from .pointsets import PointConfig, build_config, points_ideal, verify_point_tables
from .resolution import BettiTable, betti_table, minimal_resolution
from .strata import enumerate_strongly_stable, gin, groebner_family, groebner_stratum

__version__ = "0.1.0"
