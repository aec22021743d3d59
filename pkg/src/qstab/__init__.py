"""Exact equivariant data for cotangent bundles of flag varieties: stable
basis restriction tables, quantum divisor operators, and the conjugated
degenerate Hecke operators that reproduce them, over any finite
crystallographic root system."""

from .rootsys import (
    CartanDatum,
    Root,
    RootSystem,
    Weight,
    WeylElement,
    build_root_system,
    builtin_cartan,
    cartan_from_file,
    root_system,
)
from .parabolic import DegreeVector, Parabolic, parabolic
from .symfield import RatFunc, SymField, semantically_equal, sum_fractions
from .stable import (
    MINUS,
    PLUS,
    FixedPoint,
    StableTables,
    stable_tables,
)
from .quantum import (
    DivisorOperator,
    PointMatrix,
    classical_matrix,
    classical_matrix_oracle,
    commutator,
    cp_constant,
    novikov_factor,
    purely_quantum_matrix,
    quantum_matrix,
    scalar_term,
)
from .hecke import (
    bmo_operator,
    crosscheck_conjugation,
    demazure_lusztig,
    demazure_lusztig_root,
    orbit_sums,
    pcon_operator,
)
from .verify import run_all

__version__ = "0.1.0"
