//! Real Betti numbers of bounded-degree simplicial complexes: exact
//! computation, local-ball statistics, and sampled spectral estimation.
//!
//! Floating-point routines are generic over [`Scalar`] (`f32` or `f64`);
//! ranks, traces and determinants are exact. The `*64` / `*32` aliases
//! below name the common instantiations.

pub mod ball;
pub mod canon;
pub mod complex;
pub mod eigen;
pub mod error;
pub mod estimator;
pub mod exact;
pub mod families;
pub mod io;
pub mod laplacian;
pub mod sampling;
pub mod scalar;
pub mod spectrum;

pub use ball::{extract_simplex_ball, extract_vertex_ball, Root, RootedBall};
pub use canon::{canonical_code, CanonicalCode};
pub use complex::{build_complex, orient_random, Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use estimator::{
    cdf_from_moments, estimate_betti_spectral, estimate_betti_spectral_with, estimate_moments, kernel_estimate,
    local_diagonal_power, BettiEstimate, EstimatorConfig, SpectralSummary,
};
pub use families::{convergent_sequence, generate, FamilyKind, FamilySpec};
pub use io::{read_cplx, write_cplx};
pub use laplacian::{betti_exact, coboundary, laplacian, norm_bound, OperatorKind, SparseOperator};
pub use sampling::{
    empirical_profile, exact_profile, sample_size_for, sampling_distance, test_betti, LocalProfile, ReferenceCorpus,
};
pub use scalar::Scalar;
pub use spectrum::{
    exact_spectrum, log_determinant_c, pseudo_determinant, stieltjes_check, SpectralMeasure,
};

pub type SpectralMeasure64 = SpectralMeasure<f64>;
pub type SpectralMeasure32 = SpectralMeasure<f32>;
pub type SpectralSummary64 = SpectralSummary<f64>;
pub type SpectralSummary32 = SpectralSummary<f32>;
pub type BettiEstimate64 = BettiEstimate<f64>;
pub type BettiEstimate32 = BettiEstimate<f32>;
