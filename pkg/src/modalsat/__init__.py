"""Satisfiability for modal logic and its fragments over several frame classes."""

from .formula import (FALSE, TRUE, And, Box, Const, Dia, Formula, NegVar, Not, OperatorSet, Or,
                      ParseError, Var, is_poor_mans, modal_depth, operator_set_of, parse, render,
                      to_nnf)
from .fragments import (ComplexityClass, classify_operator_set, fragment_dispatch,
                        sat_np_fragment, sat_poly_fragment)
from .oracle import (FRAME3, K, LE1, LE2, SERIAL, FrameClass, KripkeModel, assignment_coverage,
                     brute_force_sat, evaluate, fixed_frame_sat)
from .procedures import (SatVerdict, poorman_sat_k, poorman_sat_kd_pairs, poorman_sat_le1, sat,
                         sat_k_tableau, sat_kd_tableau, sat_le1, sat_le2)
from .corpus import generate_formulas

__version__ = "0.1.0"
