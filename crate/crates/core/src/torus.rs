//! Flat tori in Fourier space: the twisted Dirac operator and connection
//! Laplacian act on each frequency k as `i(k+a)·` and `‖k+a‖²`, so the
//! Schrödinger–Lichnerowicz formula becomes an exact per-mode identity.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::Clifford;
use crate::error::{Error, Result};
use crate::spin::TwistedSpinorSpace;
use crate::twisted::TwistedSpinor;
use crate::C64;

/// Eigenvalues closer than this are merged into one multiplicity class.
pub const EIGEN_MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusModel {
    pub n: usize,
    pub r: usize,
    /// Constant U(1) connection `a`; frequencies are shifted to `k + a`.
    pub holonomy: Vec<f64>,
    pub mode_cutoff: usize,
}

impl TorusModel {
    pub fn new(n: usize, r: usize, holonomy: Vec<f64>, mode_cutoff: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(n, "torus dimension must be ≥ 1"));
        }
        if holonomy.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: holonomy.len(),
            });
        }
        Ok(TorusModel {
            n,
            r,
            holonomy,
            mode_cutoff,
        })
    }

    /// Zero holonomy.
    pub fn trivial(n: usize, r: usize, mode_cutoff: usize) -> Self {
        TorusModel::new(n, r, vec![0.0; n], mode_cutoff).expect("matching length")
    }

    pub fn space(&self) -> TwistedSpinorSpace {
        TwistedSpinorSpace::new(self.n, self.r)
    }

    /// All `k ∈ Zⁿ` with `‖k‖_∞ ≤ K`, lexicographic.
    pub fn modes(&self) -> Vec<Vec<i64>> {
        let k = self.mode_cutoff as i64;
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (-k..=k).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, mode: &[i64]) -> bool {
        mode.len() == self.n && mode.iter().all(|c| c.unsigned_abs() as usize <= self.mode_cutoff)
    }

    /// `k + a`.
    pub fn shifted(&self, mode: &[i64]) -> DVector<f64> {
        DVector::from_fn(self.n, |j, _| mode[j] as f64 + self.holonomy[j])
    }
}

/// Finitely many Fourier coefficients `ψ̂_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpinorField {
    space: TwistedSpinorSpace,
    coeffs: BTreeMap<Vec<i64>, TwistedSpinor>,
}

impl FourierSpinorField {
    pub fn new(space: TwistedSpinorSpace) -> Self {
        FourierSpinorField {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(mode: Vec<i64>, psi: TwistedSpinor) -> Self {
        let mut f = FourierSpinorField::new(psi.space());
        f.coeffs.insert(mode, psi);
        f
    }

    pub fn insert(&mut self, mode: Vec<i64>, psi: TwistedSpinor) -> Result<()> {
        if psi.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                got: psi.space().total_dim(),
            });
        }
        self.coeffs.insert(mode, psi);
        Ok(())
    }

    pub fn get(&self, mode: &[i64]) -> Option<&TwistedSpinor> {
        self.coeffs.get(mode)
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Vec<i64>, &TwistedSpinor)> {
        self.coeffs.iter()
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.values().map(|p| p.max_norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &FourierSpinorField) -> FourierSpinorField {
        let mut out = self.clone();
        for (k, p) in &other.coeffs {
            let v = match out.coeffs.get(k) {
                Some(q) => q.sub(p),
                None => p.scale(C64::from(-1.0)),
            };
            out.coeffs.insert(k.clone(), v);
        }
        out
    }

    fn map_modes(
        &self,
        model: &TorusModel,
        f: impl Fn(&DVector<f64>, &TwistedSpinor) -> TwistedSpinor,
    ) -> Result<FourierSpinorField> {
        if self.space != model.space() {
            return Err(Error::DimensionMismatch {
                expected: model.space().total_dim(),
                got: self.space.total_dim(),
            });
        }
        let mut out = FourierSpinorField::new(self.space);
        for (k, p) in &self.coeffs {
            if !model.contains(k) {
                return Err(Error::ModeOutsideCutoff(k.clone()));
            }
            out.coeffs.insert(k.clone(), f(&model.shifted(k), p));
        }
        Ok(out)
    }
}

/// Which Clifford generators the Dirac operator uses; a flipped generator is
/// the mutation used to show the SL check is sensitive to the wiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracVariant {
    Standard,
    FlippedGenerator(usize),
}

fn dirac_mode(cl: &Clifford, v: &DVector<f64>, psi: &TwistedSpinor, variant: DiracVariant) -> TwistedSpinor {
    let mut v = v.clone();
    if let DiracVariant::FlippedGenerator(j) = variant {
        v[j] = -v[j];
    }
    psi.mul_vector(cl, &v).scale(C64::i())
}

/// `D ψ̂_k = i(k+a)·ψ̂_k`.
pub fn dirac_apply(model: &TorusModel, field: &FourierSpinorField) -> Result<FourierSpinorField> {
    dirac_apply_variant(model, field, DiracVariant::Standard)
}

pub fn dirac_apply_variant(
    model: &TorusModel,
    field: &FourierSpinorField,
    variant: DiracVariant,
) -> Result<FourierSpinorField> {
    if let DiracVariant::FlippedGenerator(j) = variant {
        if j >= model.n {
            return Err(Error::IndexOutOfRange { index: j, n: model.n });
        }
    }
    let cl = Clifford::new(model.n);
    field.map_modes(model, |v, p| dirac_mode(&cl, v, p, variant))
}

/// `Δ ψ̂_k = ‖k+a‖² ψ̂_k`.
pub fn laplacian_apply(model: &TorusModel, field: &FourierSpinorField) -> Result<FourierSpinorField> {
    field.map_modes(model, |v, p| p.scale(C64::from(v.norm_squared())))
}

/// Dense matrix of an operator on one mode, built by applying it to a basis.
fn mode_block(space: TwistedSpinorSpace, f: impl Fn(&TwistedSpinor) -> TwistedSpinor) -> DMatrix<C64> {
    let d = space.total_dim();
    let mut m = DMatrix::zeros(d, d);
    for b in 0..d {
        let mut e = DVector::zeros(d);
        e[b] = C64::from(1.0);
        let psi = TwistedSpinor::from_flat(space, &e).expect("basis vector");
        m.set_column(b, &f(&psi).flat());
    }
    m
}

pub fn dirac_block(model: &TorusModel, mode: &[i64]) -> Result<DMatrix<C64>> {
    if !model.contains(mode) {
        return Err(Error::ModeOutsideCutoff(mode.to_vec()));
    }
    let cl = Clifford::new(model.n);
    let v = model.shifted(mode);
    Ok(mode_block(model.space(), |p| dirac_mode(&cl, &v, p, DiracVariant::Standard)))
}

/// `max_k ‖D_k D'_k − ‖k+a‖² Id‖` where `D'` is the Dirac operator of `variant`.
///
/// Flipping the sign of a generator in both factors leaves `D²` unchanged, so
/// the mutation replaces only the outer factor.
pub fn verify_sl_flat_variant(model: &TorusModel, variant: DiracVariant) -> f64 {
    let space = model.space();
    let cl = Clifford::new(model.n);
    model
        .modes()
        .par_iter()
        .map(|k| {
            let v = model.shifted(k);
            let d = mode_block(space, |p| dirac_mode(&cl, &v, p, DiracVariant::Standard));
            let outer = mode_block(space, |p| dirac_mode(&cl, &v, p, variant));
            let lap = mode_block(space, |p| p.scale(C64::from(v.norm_squared())));
            crate::linalg::max_abs(&(outer * d - lap))
        })
        .reduce(|| 0.0, f64::max)
}

/// Schrödinger–Lichnerowicz in the flat model: `D² = Δ` on every mode.
pub fn verify_sl_flat(model: &TorusModel) -> f64 {
    verify_sl_flat_variant(model, DiracVariant::Standard)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: usize,
    pub r: usize,
    pub a: Vec<f64>,
    #[serde(rename = "K")]
    pub k: usize,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// Classes with `|value| ≤ bound`.
    pub fn below(&self, bound: f64) -> Vec<Eigenvalue> {
        self.eigenvalues
            .iter()
            .filter(|e| e.value.abs() <= bound)
            .cloned()
            .collect()
    }
}

/// Sorts values and merges runs closer than [`EIGEN_MERGE_TOL`].
pub fn merge_eigenvalues(mut values: Vec<f64>) -> Vec<Eigenvalue> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = f64::NAN;
    for v in values {
        match out.last_mut() {
            Some((sum, count)) if (v - start).abs() <= EIGEN_MERGE_TOL * start.abs().max(1.0) => {
                *sum += v;
                *count += 1;
            }
            _ => {
                start = v;
                out.push((v, 1));
            }
        }
    }
    out.into_iter()
        .map(|(sum, count)| Eigenvalue {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

fn build_spectrum(model: &TorusModel, values: Vec<f64>) -> Spectrum {
    Spectrum {
        n: model.n,
        r: model.r,
        a: model.holonomy.clone(),
        k: model.mode_cutoff,
        eigenvalues: merge_eigenvalues(values),
    }
}

/// Spectrum of the truncated Dirac operator by dense diagonalization of each
/// Hermitian mode block.
pub fn dirac_spectrum(model: &TorusModel) -> Spectrum {
    let space = model.space();
    let cl = Clifford::new(model.n);
    let values: Vec<f64> = model
        .modes()
        .par_iter()
        .flat_map_iter(|k| {
            let v = model.shifted(k);
            let d = mode_block(space, |p| dirac_mode(&cl, &v, p, DiracVariant::Standard));
            d.symmetric_eigen().eigenvalues.iter().cloned().collect::<Vec<_>>()
        })
        .collect();
    build_spectrum(model, values)
}

pub fn laplacian_spectrum(model: &TorusModel) -> Spectrum {
    let d = model.space().total_dim();
    let values = model
        .modes()
        .iter()
        .flat_map(|k| std::iter::repeat_n(model.shifted(k).norm_squared(), d))
        .collect();
    build_spectrum(model, values)
}

/// `{±‖k+a‖}` with multiplicity `sigma_dim·2^{⌊n/2⌋−1}` per sign per mode
/// (the full block dimension when `k + a = 0`).
pub fn expected_dirac_spectrum(model: &TorusModel) -> Spectrum {
    let d = model.space().total_dim();
    let half = d / 2;
    let mut values = Vec::new();
    for k in model.modes() {
        let norm = model.shifted(&k).norm();
        if model.n == 1 {
            // Δ_1 = C and e_1 acts as i, so i(k+a)· = −(k+a).
            let s = -(k[0] as f64 + model.holonomy[0]);
            values.extend(std::iter::repeat_n(s, d));
        } else {
            values.extend(std::iter::repeat_n(norm, half));
            values.extend(std::iter::repeat_n(-norm, half));
        }
    }
    build_spectrum(model, values)
}

/// Largest deviation between two spectra; infinite when the classes differ.
pub fn spectrum_distance(a: &Spectrum, b: &Spectrum) -> f64 {
    if a.eigenvalues.len() != b.eigenvalues.len() {
        return f64::INFINITY;
    }
    a.eigenvalues
        .iter()
        .zip(&b.eigenvalues)
        .map(|(x, y)| {
            if x.multiplicity != y.multiplicity {
                f64::INFINITY
            } else {
                (x.value - y.value).abs()
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct HarmonicKernel {
    pub dimension: usize,
    /// Orthonormal kernel vectors, each supported on one mode.
    pub basis: Vec<FourierSpinorField>,
    /// `max ‖(k+a)_j ψ̂_k‖` over kernel elements: zero means ∇ψ = 0.
    pub parallel_residual: f64,
    pub laplacian_residual: f64,
}

const KERNEL_TOL: f64 = 1e-9;

pub fn harmonic_kernel(model: &TorusModel) -> HarmonicKernel {
    let space = model.space();
    let cl = Clifford::new(model.n);
    let mut basis = Vec::new();
    let mut parallel_residual: f64 = 0.0;
    for k in model.modes() {
        let v = model.shifted(&k);
        let d = mode_block(space, |p| dirac_mode(&cl, &v, p, DiracVariant::Standard));
        let eig = d.symmetric_eigen();
        for (c, lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda.abs() < KERNEL_TOL {
                let psi = TwistedSpinor::from_flat(space, &eig.eigenvectors.column(c).into_owned())
                    .expect("block dimension");
                parallel_residual = parallel_residual.max(v.amax() * psi.norm());
                basis.push(FourierSpinorField::single(k.clone(), psi));
            }
        }
    }
    let laplacian_residual = basis
        .iter()
        .map(|f| laplacian_apply(model, f).expect("modes in cutoff").max_norm())
        .fold(0.0, f64::max);
    HarmonicKernel {
        dimension: basis.len(),
        basis,
        parallel_residual,
        laplacian_residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub min_lambda_sq: f64,
    pub min_shift_norm: f64,
    /// `n/(4(n−1))·min(R − 2|Θ̃| − 2|dA|)`, zero in the flat model.
    pub bound_rhs: f64,
    pub kernel_dim: usize,
    pub bound_attained: bool,
    pub pass: bool,
}

/// Friedrich-type bound `λ² ≥ n/(4(n−1))·min(R − 2|Θ̃| − 2|dA|)` in the flat model.
pub fn eigenvalue_bound_check(model: &TorusModel) -> BoundReport {
    let spectrum = dirac_spectrum(model);
    let min_lambda_sq = spectrum
        .eigenvalues
        .iter()
        .map(|e| e.value * e.value)
        .fold(f64::INFINITY, f64::min);
    let min_shift_norm = model
        .modes()
        .iter()
        .map(|k| model.shifted(k).norm())
        .fold(f64::INFINITY, f64::min);
    let kernel_dim = harmonic_kernel(model).dimension;
    let bound_rhs = 0.0;
    let bound_attained = min_lambda_sq <= bound_rhs + KERNEL_TOL;
    BoundReport {
        min_lambda_sq,
        min_shift_norm,
        bound_rhs,
        kernel_dim,
        bound_attained,
        pass: min_lambda_sq >= bound_rhs && bound_attained == (kernel_dim > 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;

    fn random_field(model: &TorusModel, modes: &[Vec<i64>], seed: u64) -> FourierSpinorField {
        let mut rng = seeded_rng(seed);
        let mut f = FourierSpinorField::new(model.space());
        for k in modes {
            f.insert(k.clone(), TwistedSpinor::random_unit(model.space(), &mut rng)).unwrap();
        }
        f
    }

    #[test]
    fn mode_enumeration() {
        let m = TorusModel::trivial(2, 1, 1);
        let modes = m.modes();
        assert_eq!(modes.len(), 9);
        assert_eq!(modes[0], vec![-1, -1]);
        assert_eq!(modes[8], vec![1, 1]);
        assert!(TorusModel::new(2, 1, vec![0.0], 2).is_err());
    }

    #[test]
    fn zero_mode_is_harmonic() {
        let m = TorusModel::trivial(3, 2, 2);
        let f = random_field(&m, &[vec![0, 0, 0]], 1);
        assert_eq!(dirac_apply(&m, &f).unwrap().max_norm(), 0.0);
        assert_eq!(laplacian_apply(&m, &f).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn dirac_squares_to_laplacian_on_single_mode() {
        let m = TorusModel::new(4, 1, vec![0.2, -0.1, 0.0, 0.7], 3).unwrap();
        let f = random_field(&m, &[vec![1, -2, 3, 0]], 2);
        let dd = dirac_apply(&m, &dirac_apply(&m, &f).unwrap()).unwrap();
        let lap = laplacian_apply(&m, &f).unwrap();
        assert!(dd.sub(&lap).max_norm() < 1e-12);
    }

    #[test]
    fn outside_cutoff_rejected() {
        let m = TorusModel::trivial(2, 1, 1);
        let f = random_field(&m, &[vec![2, 0]], 3);
        assert!(matches!(dirac_apply(&m, &f), Err(Error::ModeOutsideCutoff(_))));
    }

    #[test]
    fn blocks_are_hermitian() {
        let m = TorusModel::new(3, 2, vec![0.3, 0.0, 0.0], 2).unwrap();
        let d = dirac_block(&m, &[1, -1, 2]).unwrap();
        assert!(crate::linalg::max_abs(&(d.adjoint() - &d)) < 1e-15);
    }

    #[test]
    fn n2_mode_spectrum() {
        // Oracle: the 2×2 block i(k₁e₁ + k₂e₂) has eigenvalues ±‖k‖.
        let m = TorusModel::trivial(2, 1, 3);
        let d = dirac_block(&m, &[3, -2]).unwrap();
        let mut ev: Vec<f64> = d.symmetric_eigen().eigenvalues.iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        let s = 13f64.sqrt();
        assert!((ev[0] + s).abs() < 1e-12 && (ev[1] - s).abs() < 1e-12);
    }

    #[test]
    fn sl_formula_and_mutation() {
        let m = TorusModel::new(3, 1, vec![0.3, 0.0, 0.0], 4).unwrap();
        assert!(verify_sl_flat(&m) < 1e-12);
        for j in 0..3 {
            assert!(verify_sl_flat_variant(&m, DiracVariant::FlippedGenerator(j)) > 1.0);
        }
        // Flipping one generator in both factors is invisible to D².
        let f = random_field(&m, &[vec![2, 1, -3]], 4);
        let flip = DiracVariant::FlippedGenerator(1);
        let dd = dirac_apply_variant(&m, &dirac_apply_variant(&m, &f, flip).unwrap(), flip).unwrap();
        assert!(dd.sub(&laplacian_apply(&m, &f).unwrap()).max_norm() < 1e-12);
    }

    #[test]
    fn spectra_match_closed_form() {
        for n in 2..=4 {
            for r in 1..=2 {
                for a in [0.0, 0.3] {
                    let mut hol = vec![0.0; n];
                    hol[0] = a;
                    let m = TorusModel::new(n, r, hol, 2).unwrap();
                    let got = dirac_spectrum(&m);
                    let want = expected_dirac_spectrum(&m);
                    assert!(spectrum_distance(&got, &want) < 1e-10, "n={n} r={r} a={a}");
                    let d = m.space().total_dim();
                    assert_eq!(got.total_multiplicity(), m.modes().len() * d);
                }
            }
        }
    }

    #[test]
    fn spectrum_is_symmetric_and_squares_to_laplacian() {
        let m = TorusModel::new(3, 2, vec![0.1, 0.25, -0.4], 2).unwrap();
        let s = dirac_spectrum(&m);
        let ev = &s.eigenvalues;
        for (lo, hi) in ev.iter().zip(ev.iter().rev()) {
            assert_eq!(lo.multiplicity, hi.multiplicity);
            assert!((lo.value + hi.value).abs() < 1e-10);
        }
        let squares = merge_eigenvalues(
            ev.iter()
                .flat_map(|e| std::iter::repeat_n(e.value * e.value, e.multiplicity))
                .collect(),
        );
        let lap = laplacian_spectrum(&m);
        assert_eq!(squares.len(), lap.eigenvalues.len());
        for (x, y) in squares.iter().zip(&lap.eigenvalues) {
            assert_eq!(x.multiplicity, y.multiplicity);
            assert!((x.value - y.value).abs() < 1e-9);
        }
    }

    #[test]
    fn kernel_dimensions() {
        for (n, r) in [(2, 1), (3, 2), (4, 2)] {
            let m = TorusModel::trivial(n, r, 2);
            let k = harmonic_kernel(&m);
            assert_eq!(k.dimension, m.space().total_dim());
            assert!(k.basis.iter().all(|f| f.get(&vec![0; n]).is_some()));
            assert!(k.parallel_residual < 1e-12 && k.laplacian_residual < 1e-12);
        }
        let m = TorusModel::new(3, 1, vec![0.3, 0.0, 0.0], 4).unwrap();
        assert_eq!(harmonic_kernel(&m).dimension, 0);
        // An integer holonomy moves the kernel to the mode k = −a.
        let m = TorusModel::new(2, 1, vec![1.0, 0.0], 2).unwrap();
        let k = harmonic_kernel(&m);
        assert_eq!(k.dimension, 2);
        assert!(k.basis[0].get(&[-1, 0]).is_some());
    }

    #[test]
    fn eigenvalue_bounds() {
        let m = TorusModel::trivial(3, 1, 2);
        let b = eigenvalue_bound_check(&m);
        assert!(b.pass && b.bound_attained && b.min_lambda_sq.abs() < 1e-20);
        for n in 2..=4 {
            let m = TorusModel::new(n, 1, vec![0.5; n], 2).unwrap();
            let b = eigenvalue_bound_check(&m);
            assert!(b.pass && !b.bound_attained && b.kernel_dim == 0);
            assert!((b.min_lambda_sq - n as f64 / 4.0).abs() < 1e-10);
            assert!((b.min_shift_norm - (n as f64).sqrt() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gauge_covariance_on_interior_modes() {
        let base = TorusModel::new(3, 1, vec![0.3, -0.2, 0.1], 3).unwrap();
        let moved = TorusModel::new(3, 1, vec![1.3, -0.2, 2.1], 3).unwrap();
        for k in base.modes().into_iter().filter(|k| k.iter().all(|c| c.abs() <= 1)) {
            let shifted = vec![k[0] - 1, k[1], k[2] - 2];
            let a = dirac_block(&base, &k).unwrap();
            let b = dirac_block(&moved, &shifted).unwrap();
            assert!(crate::linalg::max_abs(&(a - b)) < 1e-12);
        }
    }

    #[test]
    fn truncation_monotonicity() {
        let k = 2;
        let small = TorusModel::new(2, 2, vec![0.3, 0.0], k).unwrap();
        let large = TorusModel::new(2, 2, vec![0.3, 0.0], k + 1).unwrap();
        let bound = k as f64 / 2.0;
        let a = dirac_spectrum(&small).below(bound);
        let b = dirac_spectrum(&large).below(bound);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.multiplicity, y.multiplicity);
            assert!((x.value - y.value).abs() < 1e-10);
        }
    }

    #[test]
    fn spectrum_json_shape() {
        let m = TorusModel::trivial(2, 1, 1);
        let v = serde_json::to_value(dirac_spectrum(&m)).unwrap();
        assert_eq!(v["K"], 1);
        assert_eq!(v["a"], serde_json::json!([0.0, 0.0]));
        // −√2 from the four corner modes (±1, ±1).
        assert_eq!(v["eigenvalues"][0]["multiplicity"], 4);
        let zero = v["eigenvalues"].as_array().unwrap().iter().find(|e| e["value"] == 0.0).unwrap();
        assert_eq!(zero["multiplicity"], 2);
    }

    #[test]
    fn merge_groups_close_values() {
        let m = merge_eigenvalues(vec![1.0, -1.0, 1.0 + 1e-12, 0.5]);
        assert_eq!(m.len(), 3);
        assert_eq!(m[2].multiplicity, 2);
    }
}
