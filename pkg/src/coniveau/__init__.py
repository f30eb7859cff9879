"""Coniveau and level realizations of classes in the Grothendieck ring of varieties."""

from coniveau.dsl import dump_table, load_table, normalize, parse, read_table
from coniveau.errors import ConstraintError, InputError, ParseError, TableFormatError, TableValidationError
from coniveau.ghc import GhcReport, TransferReport, ghc_check, ghc_transfer, kernel_check
from coniveau.hodge import (
    UNIT,
    FilteredHodgeClass,
    FPPolynomial,
    HodgeAtom,
    HodgeClass,
    K,
    atom_tensor,
    fhc_add,
    fhc_tensor,
    fhc_weight_truncate,
    fp,
    gamma,
    graded_dims,
    hc_add,
    lefschetz_class,
    named,
    phi,
    poincare,
    tate,
    tate_twist,
)
from coniveau.motivic import (
    L,
    GeneratorSymbol,
    MotivicClass,
    Registry,
    Term,
    mc_add,
    mc_equal_mod,
    mc_from_expr,
    mc_mul,
    mc_truncate,
    realize_lambda,
    realize_nu,
)
from coniveau.varieties import (
    VarietyTable,
    blowup_table,
    builtin_curve,
    builtin_point,
    builtin_projspace,
    exceptional_table,
    lam,
    nu,
    product_table,
    validate_table,
)

__version__ = "0.1.0"
