"""Extended binary quadratic residue codes, their Jacobi polynomials and harmonic
weight enumerators, and the 3-designs carried by their shells."""

from .codes import (
    EnumerationBudgetError,
    LinearCode,
    cyclic_code,
    dual,
    enumerate_codewords,
    extend_parity,
    extended_qr_code,
    permute,
    qr_code,
    same_code,
    shell,
    weight_distribution,
)
from .designs import delta_s_profile, shell_design_check_exhaustive, shell_design_check_orbitwise, union_design_check
from .enumerators import (
    HarmonicFunction3,
    HarmonicWeightEnumerator,
    JacobiPolynomial,
    covering_count,
    harmonic_weight_enumerator,
    invariant_harmonic3,
    jacobi,
)
from .gf2 import Gf2Poly, cyclotomic_cosets, qr_generator_polynomial, quadratic_residues
from .projective import OrbitPartition, duality_permutation, orbit_partition, psl2_generators

__version__ = "0.1.0"
