//! Fermionic one-particle density operator.

pub mod asymptotic;
pub mod matrix;
pub mod oracle;
pub mod polynomial;

pub use asymptotic::{h_coefficients, HCoefficients};
pub use matrix::{fermion_rdo_matrix, ladder_position_matrix, RdoMatrix};
pub use oracle::{quadrature_rdo_element, QuadratureOracle};
pub use polynomial::{build_fermion_polynomial, FermionPolynomial};
