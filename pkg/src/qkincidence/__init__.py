"""Exact equivariant quantum K-theory of the incidence variety Fl(1, n-1; n)."""

from .coefficients import (
    NotInPositivityCone, TorusCoefficient, char_monomial, from_positivity_basis,
    phi_twist, specialize_one, to_positivity_basis,
)
from .combinatorics import (
    Degree, TildeIndex, WPIndex, bruhat_leq, divisor_index, enumerate_wp, i_set,
    iota, length, normalize, q_shift, unit_index,
)
from .formats import ParseError, format_element, parse_element
from .qkring import (
    DivisorPolynomial, QKElement, chevalley_mult, classical_divisor_mult,
    divisor_polynomial, dual_expand, euler_pair, lr_mult, mult, phi_map,
)

__version__ = "0.1.0"
