"""Pointfree topology on finite frames.

Finite posets, their downset frames, separation classifiers, nuclei and the
patch construction, with brute-force oracles for every theorem the package
implements.  See the service subpackage for the HTTP surface and `cli` for
the thin client.
"""
from .adjunction import (
    Adjunction,
    FrameHom,
    JoinPreservationError,
    heyting,
    identity_hom,
    is_perfect_map,
    is_spectral_map,
    right_adjoint,
)
from .coreflect import (
    LatticeHom,
    check_universal_property,
    enumerate_frame_homs,
    extend,
    universal_map,
)
from .frame import (
    Basis,
    DirectLattice,
    Family,
    FiniteFrame,
    FrameError,
    FrameTooLargeError,
    all_elements_basis,
    basic_cover,
    close_under_finite_joins,
    frame_isomorphism,
    is_basis,
    make_basis,
    verify_frame_laws,
)
from .nucleus import (
    CompositionFamily,
    Nucleus,
    NucleusViolation,
    PatchFrame,
    Prenucleus,
    basic_le,
    enumerate_nuclei,
    identity_nucleus,
    is_scott_continuous,
    nucleus_join,
    nucleus_join_kleene,
    nucleus_meet,
    patch_frame,
    top_nucleus,
    verify_nucleus,
    verify_prenucleus,
)
from .patchstone import (
    PatchCounit,
    boolean_envelope_oracle,
    check_patch_is_stone,
    closed_nucleus,
    counit,
    johnstone_decompose,
    open_nucleus,
    patch_basis,
)
from .poset import FinPoset, PosetError, enumerate_posets
from .separation import (
    LocaleClass,
    check_prop_suite,
    classify,
    is_clopen,
    is_compact_locale,
    is_compact_open,
    way_below,
    way_below_fast,
    well_inside,
)
from .suite import SuiteConfig, SuiteReport, run_suite

__all__ = [
    "Adjunction",
    "Basis",
    "CompositionFamily",
    "DirectLattice",
    "Family",
    "FinPoset",
    "FiniteFrame",
    "FrameError",
    "FrameHom",
    "FrameTooLargeError",
    "JoinPreservationError",
    "LatticeHom",
    "LocaleClass",
    "Nucleus",
    "NucleusViolation",
    "PatchCounit",
    "PatchFrame",
    "PosetError",
    "Prenucleus",
    "SuiteConfig",
    "SuiteReport",
    "all_elements_basis",
    "basic_cover",
    "basic_le",
    "boolean_envelope_oracle",
    "check_patch_is_stone",
    "check_prop_suite",
    "check_universal_property",
    "classify",
    "close_under_finite_joins",
    "closed_nucleus",
    "counit",
    "enumerate_frame_homs",
    "enumerate_nuclei",
    "enumerate_posets",
    "extend",
    "frame_isomorphism",
    "heyting",
    "identity_hom",
    "identity_nucleus",
    "is_basis",
    "is_clopen",
    "is_compact_locale",
    "is_compact_open",
    "is_perfect_map",
    "is_scott_continuous",
    "is_spectral_map",
    "johnstone_decompose",
    "make_basis",
    "nucleus_join",
    "nucleus_join_kleene",
    "nucleus_meet",
    "open_nucleus",
    "patch_basis",
    "patch_frame",
    "run_suite",
    "top_nucleus",
    "universal_map",
    "verify_frame_laws",
    "verify_nucleus",
    "verify_prenucleus",
    "way_below",
    "way_below_fast",
    "well_inside",
]
