//! Based free modules over `R = k[x1..xn]`, degree-preserving maps, chain
//! complexes, strand homology and deformation retracts.

mod complex;
mod map;
mod module;
mod sdr;

pub use complex::{in_submodule, ChainComplex, Strand};
pub use map::{GradedMap, ModuleMap};
pub use module::{BasedModule, GradedElement, GradedModule, Label, ModuleElement};
pub use sdr::{retract_from_truncation, SdrData, TruncationRetract};
pub(crate) use sdr::check_zero;
