"""Exact factorial Grothendieck polynomials and their Jacobi-Trudi formulas."""

from .grothendieck import (
    bialternant,
    buch_specialize,
    build_M,
    build_Mbar,
    factorial_power,
    gen_binomial,
    himn_determinant,
    hm_determinant,
    oplus,
    schur_specialize,
    ssyt_schur_oracle,
)
from .ring import Polynomial, RingContext, determinant, exact_div, parse, serialize, substitute, unit_inverse
from .series import LaurentSeries, bar, e_series, ebar_series, g_coeff, gk_series

__version__ = "0.1.0"
