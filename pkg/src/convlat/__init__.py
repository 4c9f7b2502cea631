"""Convolution equations on lattices over finite fields."""

from .ff import Field, FieldElem, make_field, root_of_unity
from .poly import LaurentPoly, MultiPoly, Poly, format_factored
from .lattice import AbelianGroup, GroupFunction, KernelSpec, Sublattice, pushforward, quotient
from .conv import charpoly, convolve, dynamic_test, evolve, kernel_basis, kernel_dimension, lights_out_solve
from .fourier import dft, harmonic_points, idft, symbol, trace_kernel_basis
from .cheb import charpoly_route, chebyshev_T, dickson, divisibility_check
from .count import line_period, partnership_graph, suborder, table_build, unit_group_order

__all__ = [
    "Field",
    "FieldElem",
    "make_field",
    "root_of_unity",
    "LaurentPoly",
    "MultiPoly",
    "Poly",
    "format_factored",
    "AbelianGroup",
    "GroupFunction",
    "KernelSpec",
    "Sublattice",
    "pushforward",
    "quotient",
    "charpoly",
    "convolve",
    "dynamic_test",
    "evolve",
    "kernel_basis",
    "kernel_dimension",
    "lights_out_solve",
    "dft",
    "harmonic_points",
    "idft",
    "symbol",
    "trace_kernel_basis",
    "charpoly_route",
    "chebyshev_T",
    "dickson",
    "divisibility_check",
    "line_period",
    "partnership_graph",
    "suborder",
    "table_build",
    "unit_group_order",
]

__version__ = "0.1.0"
