"""Congruence lattices of finite algebras and the duplication technique."""

from .algebra import (
    BinaryRelation,
    Congruence,
    FiniteAlgebra,
    Operation,
    compose,
    congruence_join,
    congruence_meet,
    enumerate_con,
    permute_check,
    power_subalgebra,
    principal_congruence,
)
from .catalog import ShapeId, build, dual, parse_shape
from .errors import DomainError, FreeseError, LimitExceeded, ParseError, VerificationError
from .io import emit_algebra, format_partition, parse_algebra, parse_partition
from .lattice import FiniteLattice, generated_sublattice, isomorphic, lattice_of_congruences
from .technique import (
    M3Config,
    PentagonConfig,
    build_m33,
    classify_pentagon,
    duplicate,
    find_m3s,
    find_pentagons,
    iterate_rods,
    lift,
    pentagon_condition,
)
from .terms import eval_inequality, parse_inequality, parse_term

__version__ = "0.1.0"
