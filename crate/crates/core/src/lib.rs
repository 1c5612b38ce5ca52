pub mod bicomplex;
pub mod bielement;
pub mod error;
pub mod exterior;
pub mod homological;
pub mod linalg;
pub mod perturbation;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod scalar;
pub mod serialize;
pub mod suites;
pub mod transfer;

pub use error::{Error, Result};
pub use scalar::{Field, Fp, Rational};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;

