//! Descent of products along deformation retracts, homotopy transfer tree
//! terms, and A∞ operations.

mod htt;
mod product;
mod trees;

pub use htt::{
    ainfty_descend_simplified, check_higher_ops_vanish, check_stasheff, htt_term, stasheff_sum, AinfinityStructure, DescendedAinfinity,
    DgAsAinfinity,
};
pub use product::{
    basis_elements, check_generalized_leibniz, descend_product, verify_dg_axioms, verify_i_multiplicative, DescendedProduct, DgProduct,
    Sampling,
};
pub(crate) use product::tuples;
pub use trees::{enumerate_pbt, enumerate_pt, PlanarTree};
