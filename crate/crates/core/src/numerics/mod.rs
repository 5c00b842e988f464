//! Precision-generic numerical building blocks.

pub mod hermite;
pub mod jacobi;
pub mod matrix;
pub mod quadrature;
pub mod real;

pub use hermite::{hermite_function, hermite_function_log, hermite_functions, hermite_poly};
pub use jacobi::{jacobi_eigh, Eigen};
pub use matrix::SymmetricMatrix;
pub use quadrature::{gauss_hermite, QuadratureRule};
pub use real::{BigReal, Precision, Real};
