"""Exact computations in finite Z-linear categories.

Everything runs on arbitrary-precision integer arithmetic: hom-groups are
finitely presented abelian groups, completions and associated rings are
presented exactly, and every certificate (exactness, splitting, ring
isomorphism, K0 class) is replayable.
"""

from .intlin import IntMatrix, SnfDecomposition, det, snf, solve_z
from .abgroup import (AbHom, FpAbelianGroup, cokernel, direct_sum, image,
                      is_exact_at, is_iso, kernel)
from .zcat import CategoryError, Morphism, ValidationReport, ZCategory
from .completion import (HomSpace, IdemObject, MatMorphism, SplitPair, hom_tuple,
                         idem_hom, mat_compose, split_check)
from .ringify import (RingElement, RingPresentation, build_ring, embed_morphism,
                      peirce_block, ring_iso_check, ring_mult,
                      truncated_additive_ring)
from .modules import (FpFunctor, FpRingModule, PresentedMap, exactness_transport,
                      find_quasi_inverse, restrict, roundtrip_check, to_ring_module)
from .resolutions import (KernelChain, SplitWitness, chain_certificate,
                          check_regular, find_splitting, fp_resolution,
                          pseudo_kernel, pseudo_n_kernel, verify_chain_certificate,
                          verify_split_witness)
from .k0 import (K0Class, SemisimpleWitness, block_matrix_ring, class_of,
                 k0_bridge_check, negative_k_report, verify_witness)
from . import builders, specfile

__version__ = "0.1.0"

__all__ = [
    "IntMatrix", "SnfDecomposition", "det", "snf", "solve_z",
    "AbHom", "FpAbelianGroup", "cokernel", "direct_sum", "image",
    "is_exact_at", "is_iso", "kernel",
    "CategoryError", "Morphism", "ValidationReport", "ZCategory",
    "HomSpace", "IdemObject", "MatMorphism", "SplitPair", "hom_tuple",
    "idem_hom", "mat_compose", "split_check",
    "RingElement", "RingPresentation", "build_ring", "embed_morphism",
    "peirce_block", "ring_iso_check", "ring_mult", "truncated_additive_ring",
    "FpFunctor", "FpRingModule", "PresentedMap", "exactness_transport",
    "find_quasi_inverse", "restrict", "roundtrip_check", "to_ring_module",
    "KernelChain", "SplitWitness", "chain_certificate", "check_regular",
    "find_splitting", "fp_resolution", "pseudo_kernel", "pseudo_n_kernel",
    "verify_chain_certificate", "verify_split_witness",
    "K0Class", "SemisimpleWitness", "block_matrix_ring", "class_of",
    "k0_bridge_check", "negative_k_report", "verify_witness",
    "builders", "specfile",
    "__version__",
]
