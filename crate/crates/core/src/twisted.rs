//! Twisted spinors `φ ∈ Σ_r ⊗ Δ_n`.
//!
//! Coefficients are stored as a `σ × 2^{⌊n/2⌋}` matrix: rows are coordinates
//! in the basis `v_I` of Σ_r (see [`crate::spin::sigma_indices`]), columns
//! are standard coordinates of Δ_n.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::clifford::{from_u_basis, to_u_basis, Clifford, StructuredOperator};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::spin::TwistedSpinorSpace;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct TwistedSpinor {
    space: TwistedSpinorSpace,
    coeffs: DMatrix<C64>,
}

impl TwistedSpinor {
    pub fn new(space: TwistedSpinorSpace, coeffs: DMatrix<C64>) -> Result<Self> {
        if coeffs.nrows() != space.sigma_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.sigma_dim(),
                got: coeffs.nrows(),
            });
        }
        if coeffs.ncols() != space.spin_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.spin_dim(),
                got: coeffs.ncols(),
            });
        }
        Ok(TwistedSpinor { space, coeffs })
    }

    pub fn zeros(space: TwistedSpinorSpace) -> Self {
        TwistedSpinor {
            space,
            coeffs: DMatrix::zeros(space.sigma_dim(), space.spin_dim()),
        }
    }

    /// Gaussian coefficients normalized to unit length.
    pub fn random_unit<R: Rng>(space: TwistedSpinorSpace, rng: &mut R) -> Self {
        let coeffs = DMatrix::from_fn(space.sigma_dim(), space.spin_dim(), |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = coeffs.norm();
        TwistedSpinor {
            space,
            coeffs: coeffs / C64::from(norm),
        }
    }

    pub fn from_flat(space: TwistedSpinorSpace, flat: &DVector<C64>) -> Result<Self> {
        if flat.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                got: flat.len(),
            });
        }
        let d = space.spin_dim();
        Ok(TwistedSpinor {
            space,
            coeffs: DMatrix::from_fn(space.sigma_dim(), d, |t, s| flat[t * d + s]),
        })
    }

    /// Coefficients in `v_I ⊗ u_J` coordinates, same layout as `coeffs`.
    pub fn from_u_coefficients(space: TwistedSpinorSpace, u: DMatrix<C64>) -> Result<Self> {
        let mut tw = TwistedSpinor::new(space, u)?;
        tw.map_rows(from_u_basis);
        Ok(tw)
    }

    pub fn space(&self) -> TwistedSpinorSpace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn r(&self) -> usize {
        self.space.r
    }

    pub fn coeffs(&self) -> &DMatrix<C64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.coeffs
    }

    /// Row-major flattening, twist index major.
    pub fn flat(&self) -> DVector<C64> {
        let d = self.space.spin_dim();
        DVector::from_fn(self.space.total_dim(), |i, _| self.coeffs[(i / d, i % d)])
    }

    pub fn u_coefficients(&self) -> DMatrix<C64> {
        let mut out = self.clone();
        out.map_rows(to_u_basis);
        out.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalized(&self) -> Self {
        self.scale(C64::from(1.0 / self.norm()))
    }

    pub fn scale(&self, z: C64) -> Self {
        TwistedSpinor {
            space: self.space,
            coeffs: &self.coeffs * z,
        }
    }

    pub fn add(&self, other: &TwistedSpinor) -> Self {
        assert_eq!(self.space, other.space);
        TwistedSpinor {
            space: self.space,
            coeffs: &self.coeffs + &other.coeffs,
        }
    }

    pub fn sub(&self, other: &TwistedSpinor) -> Self {
        assert_eq!(self.space, other.space);
        TwistedSpinor {
            space: self.space,
            coeffs: &self.coeffs - &other.coeffs,
        }
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `⟨self, other⟩`, antilinear in `other`.
    pub fn inner(&self, other: &TwistedSpinor) -> C64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    fn map_rows(&mut self, f: impl Fn(&DVector<C64>) -> DVector<C64>) {
        for t in 0..self.coeffs.nrows() {
            let row = self.coeffs.row(t).transpose();
            self.coeffs.set_row(t, &f(&row).transpose());
        }
    }

    fn mapped_rows(&self, f: impl Fn(&DVector<C64>) -> DVector<C64>) -> Self {
        let mut out = self.clone();
        out.map_rows(f);
        out
    }

    /// `(1 ⊗ A)·φ` for a structured operator on Δ_n.
    pub fn apply_spin(&self, op: &StructuredOperator) -> Self {
        self.mapped_rows(|row| op.apply(row))
    }

    /// `(1 ⊗ x)·φ`.
    pub fn mul_vector(&self, cl: &Clifford, x: &DVector<f64>) -> Self {
        self.mapped_rows(|row| cl.mul_vector_raw(x, row))
    }

    pub fn mul_complex_vector(&self, cl: &Clifford, z: &DVector<C64>) -> Self {
        self.mapped_rows(|row| cl.mul_complex_vector_raw(z, row))
    }

    /// `(1 ⊗ ω)·φ` on the spin factor.
    pub fn mul_form(&self, cl: &Clifford, form: &Form) -> Self {
        self.mapped_rows(|row| cl.mul_form_raw(form, row))
    }

    /// `(M ⊗ 1)·φ` for a `σ × σ` operator on Σ_r.
    pub fn apply_twist(&self, m: &DMatrix<C64>) -> Self {
        TwistedSpinor {
            space: self.space,
            coeffs: m * &self.coeffs,
        }
    }

    /// A dense operator on the flattened space.
    pub fn apply_dense(&self, m: &DMatrix<C64>) -> Self {
        TwistedSpinor::from_flat(self.space, &(m * self.flat())).expect("square operator")
    }
}

#[derive(Serialize, Deserialize)]
struct TwistedJson {
    n: usize,
    r: usize,
    coeffs: Vec<Vec<[f64; 2]>>,
}

impl Serialize for TwistedSpinor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let u = self.u_coefficients();
        TwistedJson {
            n: self.space.n,
            r: self.space.r,
            coeffs: (0..u.nrows())
                .map(|t| u.row(t).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedSpinor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TwistedJson::deserialize(d)?;
        let space = TwistedSpinorSpace::new(raw.n, raw.r);
        let cols = space.spin_dim();
        if raw.coeffs.len() != space.sigma_dim() || raw.coeffs.iter().any(|row| row.len() != cols) {
            return Err(serde::de::Error::custom(format!(
                "expected {}×{} coefficients",
                space.sigma_dim(),
                cols
            )));
        }
        let u = DMatrix::from_fn(space.sigma_dim(), cols, |t, s| {
            C64::new(raw.coeffs[t][s][0], raw.coeffs[t][s][1])
        });
        TwistedSpinor::from_u_coefficients(space, u).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn json_round_trip(seed in any::<u64>(), n in 0usize..7, r in 0usize..5) {
            let space = TwistedSpinorSpace::new(n, r);
            let phi = TwistedSpinor::random_unit(space, &mut seeded_rng(seed));
            let text = serde_json::to_string(&phi).unwrap();
            let back: TwistedSpinor = serde_json::from_str(&text).unwrap();
            prop_assert!(back.sub(&phi).max_norm() < 1e-12);
        }
    }

    #[test]
    fn flat_layout_is_twist_major() {
        let space = TwistedSpinorSpace::new(4, 3);
        let phi = TwistedSpinor::random_unit(space, &mut seeded_rng(1));
        let f = phi.flat();
        assert_eq!(f[4 + 1], phi.coeffs()[(1, 1)]);
        assert_eq!(TwistedSpinor::from_flat(space, &f).unwrap(), phi);
    }

    #[test]
    fn wrong_shape_rejected() {
        let space = TwistedSpinorSpace::new(4, 2);
        assert!(TwistedSpinor::new(space, DMatrix::zeros(1, 4)).is_err());
    }
}
