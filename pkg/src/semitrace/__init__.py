"""Numerical semigroup rings: ideals, graded resolutions and homology."""

from .engine import (
    GradedMatrix,
    GradedModule,
    TruncatedRing,
    betti_numbers,
    free_resolution,
    generator_row,
    hilbert_function,
    kernel_degreewise,
    module_from_ideal,
    stabilization_check,
    syzygy,
    truncate,
)
from .errors import CertificateNotFound, SemitraceError
from .homology import (
    HomologyReport,
    check_yB1_in_IZ1,
    check_Z1_iso_shifted_m,
    corollary_iso_certificate,
    delta1,
    end_over_trace,
    ext_i,
    ext_tail_vanishing,
    koszul_ZB,
    matlis_consistency,
    question12_check,
    sym2,
    theorem38_battery,
    tor1_self,
    trace_of_module,
    wedge2,
)
from .ideals import (
    FractionalMonomialIdeal,
    canonical_ideal,
    classify,
    colon,
    conductor_ideal,
    hom_ideal,
    ideal_from_degrees,
    intersection,
    is_ulrich_ideal,
    maximal_ideal,
    principal,
    product,
    trace_ideal,
    trace_via_single_colon,
)
from .semigroup import NumericalSemigroup, enumerate_semigroups, new_semigroup

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
