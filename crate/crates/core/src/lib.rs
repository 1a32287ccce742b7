//! Exact computations with matrix pencils over the Gaussian rationals:
//! Kronecker canonical forms, miniversal deformations, strata of small
//! codimension and bifurcation diagrams of one- and two-parameter families.

pub mod bifurcation;
pub mod deformation;
pub mod error;
pub mod io;
pub mod kronecker;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod polymat;
pub mod rng;
pub mod scalar;
pub mod strata;

pub use bifurcation::{
    classify, family_from_template, verify_against_paper, BifurcationDiagram, LocusDescriptor,
    LocusStratum, PencilFamily,
};
pub use deformation::{
    check_miniversal, check_transversal, codimension, instantiate, miniversal_template,
    stratum_tangent, tangent_space, MiniversalTemplate, PairSpaceBasis, ParameterSlot, SlotKind,
    Variant,
};
pub use error::{Error, Result};
pub use kronecker::{
    format_type, kronecker_form, kronecker_type, parse_type, EigenvalueClass, KroneckerForm,
    KroneckerType, SegreBlock,
};
pub use matrix::Matrix;
pub use pencil::{
    block_delta, block_finite, block_infinite, block_nabla, direct_sum, jiggle, random_equivalence,
    EquivalenceWitness, Pencil,
};
pub use poly::{
    discriminant_in_x, irreducible_split, parse_bipoly, poly_gcd, squarefree_decomposition, BiPoly,
    UniPoly,
};
pub use scalar::{GaussianRational, Q};
pub use strata::{enumerate_types, generic_list, StratumDescriptor};
