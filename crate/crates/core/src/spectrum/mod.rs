//! Natural spectrum and its asymptotic analysis.

pub mod decay;
pub mod natural;

pub use decay::{
    alpha_candidates, alpha_root, boltzmann_exponent, boltzmann_series, decay_report, exponential_decay,
    exponential_decay_quadratic, exponential_series, fermi_gap, gaussian_decay, gaussian_series, plateau,
    running_mean, DecayReport, Plateau, Series,
};
pub use natural::{natural_spectrum, NaturalSpectrum, Parity};
