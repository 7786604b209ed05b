"""
Norms, balls, metrics and completeness of GD_K
"""

from .Balls import AbsorbentWitness, absorbent_witness, ball_member, c_set_member, u_set_member
from .Completeness import CauchyLimit, cauchy_limit
from .Metrics import MetricReport, gauge_P, gauge_valuation, metric
from .Norms import NormValue, P_m, norm_m, norm_m_global, norm_table, v_m
