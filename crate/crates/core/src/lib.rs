//! Numerical toolkit for twisted spinors: Clifford algebras and spin
//! representations, partially pure spinors and their CR data, curvature
//! identities for the twisted spin connection, flat-torus Dirac spectra and
//! Lie-algebra tests of CR integrability on partial flag manifolds.

pub mod clifford;
pub mod curvature;
pub mod error;
pub mod flag;
pub mod form;
pub mod linalg;
pub mod purity;
pub mod spin;
pub mod suite;
pub mod torus;
pub mod twisted;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// The seedable generator used throughout; its stream is platform independent.
pub type SpinRng = rand_chacha::ChaCha8Rng;

/// Name recorded in reports next to the seed.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng";

pub fn seeded_rng(seed: u64) -> SpinRng {
    use rand::SeedableRng;
    SpinRng::seed_from_u64(seed)
}

/// Generator for trial `index` of a seeded run: same seed, stream `index`.
///
/// Trials can then run in any order or in parallel with identical results.
pub fn trial_rng(seed: u64, index: u64) -> SpinRng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(index);
    rng
}
