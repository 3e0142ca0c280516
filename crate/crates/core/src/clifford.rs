//! The complexified Clifford algebra acting on Δ_n = (C²)^{⊗⌊n/2⌋}.
//!
//! Generators follow the explicit Kronecker table: `e_1, e_2` act on the last
//! tensor factor, `e_{2j-1}, e_{2j}` place `g₁`/`g₂` on factor `k-j+1` (counting
//! from the left, 1-based) with `T` on every factor to its right, and in odd
//! dimension `e_{2k+1} = i T ⊗ … ⊗ T`. All indices in this API are 0-based, so
//! `generator(n, 0)` is `e_1`.
//!
//! Coefficient vectors are stored in the computational (standard) basis of
//! `C^{2^k}`, with the leftmost tensor factor most significant. The unitary
//! basis `u_{ε₁…ε_k}` is reached through [`Spinor::u_coefficients`] and is the
//! basis used for serialization.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::linalg::{max_abs, max_abs_vec};
use crate::C64;

pub type Block = Matrix2<C64>;

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// The 2×2 building blocks `Id, g₁, g₂, T` and the basis change to `u_{±1}`.
pub mod blocks {
    use super::*;

    pub fn id() -> Block {
        Block::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn g1() -> Block {
        Block::new(I, ZERO, ZERO, -I)
    }

    pub fn g2() -> Block {
        Block::new(ZERO, I, I, ZERO)
    }

    pub fn t() -> Block {
        Block::new(ZERO, -I, I, ZERO)
    }

    /// Linear part of α(z₁, z₂) = (−z̄₂, z̄₁).
    pub fn alpha() -> Block {
        Block::new(ZERO, -ONE, ONE, ZERO)
    }

    /// Linear part of β(z₁, z₂) = (z̄₁, z̄₂).
    pub fn beta() -> Block {
        id()
    }

    /// Columns `u₊₁ = (1, −i)/√2` and `u₋₁ = (1, i)/√2`.
    pub fn u_basis() -> Block {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Block::new(ONE * s, ONE * s, -I * s, I * s)
    }

    pub fn is_identity(b: &Block) -> bool {
        *b == id()
    }
}

/// ε = ±1 label of a basis spinor factor; `Plus` sorts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn bit(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// All multi-indices in `{±1}^k`, lexicographic with `+1 < −1`.
pub fn multi_indices(k: usize) -> Vec<Vec<Sign>> {
    (0..1usize << k).map(|flat| multi_index(flat, k)).collect()
}

/// Position `flat` in the lexicographic enumeration of `{±1}^k`.
pub fn multi_index(flat: usize, k: usize) -> Vec<Sign> {
    (0..k)
        .map(|p| {
            if (flat >> (k - 1 - p)) & 1 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

pub fn multi_index_position(eps: &[Sign]) -> usize {
    eps.iter().fold(0, |acc, s| (acc << 1) | s.bit())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinorSpace {
    n: usize,
}

impl SpinorSpace {
    pub fn new(n: usize) -> Self {
        SpinorSpace { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 2×2 tensor factors, `⌊n/2⌋`.
    pub fn factors(&self) -> usize {
        self.n / 2
    }

    pub fn dim(&self) -> usize {
        1 << self.factors()
    }
}

/// A scalar times a Kronecker product of 2×2 blocks, applied factor by
/// factor without forming the dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredOperator {
    pub scalar: C64,
    pub factors: Vec<Block>,
}

impl StructuredOperator {
    pub fn identity(k: usize) -> Self {
        StructuredOperator {
            scalar: ONE,
            factors: vec![blocks::id(); k],
        }
    }

    pub fn new(scalar: C64, factors: Vec<Block>) -> Self {
        StructuredOperator { scalar, factors }
    }

    pub fn dim(&self) -> usize {
        1 << self.factors.len()
    }

    pub fn apply(&self, psi: &DVector<C64>) -> DVector<C64> {
        let mut out = psi.clone();
        self.apply_in_place(out.as_mut_slice());
        out
    }

    pub fn apply_in_place(&self, data: &mut [C64]) {
        let k = self.factors.len();
        debug_assert_eq!(data.len(), 1 << k);
        for (p, b) in self.factors.iter().enumerate() {
            if blocks::is_identity(b) {
                continue;
            }
            let stride = 1 << (k - 1 - p);
            for base in (0..data.len()).step_by(2 * stride) {
                for i in base..base + stride {
                    let (x0, x1) = (data[i], data[i + stride]);
                    data[i] = b[(0, 0)] * x0 + b[(0, 1)] * x1;
                    data[i + stride] = b[(1, 0)] * x0 + b[(1, 1)] * x1;
                }
            }
        }
        if self.scalar != ONE {
            for z in data.iter_mut() {
                *z *= self.scalar;
            }
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &StructuredOperator) -> StructuredOperator {
        assert_eq!(self.factors.len(), other.factors.len());
        StructuredOperator {
            scalar: self.scalar * other.scalar,
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn adjoint(&self) -> StructuredOperator {
        StructuredOperator {
            scalar: self.scalar.conj(),
            factors: self.factors.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scaled(&self, s: C64) -> StructuredOperator {
        StructuredOperator {
            scalar: self.scalar * s,
            factors: self.factors.clone(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(1, 1, self.scalar);
        for b in &self.factors {
            let bd = DMatrix::from_fn(2, 2, |i, j| b[(i, j)]);
            m = m.kronecker(&bd);
        }
        m
    }
}

/// κ(e_i), 0-based `i < n`.
pub fn generator(n: usize, i: usize) -> Result<StructuredOperator> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let k = n / 2;
    let mut factors = vec![blocks::id(); k];
    if i == 2 * k {
        // odd dimension, last generator
        for f in factors.iter_mut() {
            *f = blocks::t();
        }
        return Ok(StructuredOperator::new(I, factors));
    }
    let j = i / 2; // pair index, 0-based
    let pos = k - 1 - j;
    factors[pos] = if i % 2 == 0 { blocks::g1() } else { blocks::g2() };
    for f in factors.iter_mut().skip(pos + 1) {
        *f = blocks::t();
    }
    Ok(StructuredOperator::new(ONE, factors))
}

/// Generator set of ℂl_n together with Clifford multiplication.
#[derive(Debug, Clone)]
pub struct Clifford {
    n: usize,
    generators: Vec<StructuredOperator>,
}

impl Clifford {
    pub fn new(n: usize) -> Self {
        let generators = (0..n).map(|i| generator(n, i).expect("in range")).collect();
        Clifford { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> SpinorSpace {
        SpinorSpace::new(self.n)
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn generator(&self, i: usize) -> &StructuredOperator {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[StructuredOperator] {
        &self.generators
    }

    /// κ(e_{i₁})⋯κ(e_{i_p}) as a single structured operator.
    pub fn product(&self, indices: &[usize]) -> StructuredOperator {
        indices.iter().fold(
            StructuredOperator::identity(self.space().factors()),
            |acc, &i| acc.compose(&self.generators[i]),
        )
    }

    /// Dense κ(x) for a real vector x.
    pub fn vector_operator(&self, x: &DVector<f64>) -> Result<DMatrix<C64>> {
        self.check_len(x.len())?;
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (xi, g) in x.iter().zip(&self.generators) {
            if *xi != 0.0 {
                m += g.to_dense() * C64::from(*xi);
            }
        }
        Ok(m)
    }

    /// x·ψ on raw coefficients.
    pub fn mul_vector_raw(&self, x: &DVector<f64>, psi: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(psi.len());
        for (xi, g) in x.iter().zip(&self.generators) {
            if *xi != 0.0 {
                out += g.apply(psi) * C64::from(*xi);
            }
        }
        out
    }

    /// Complex vector Z = Σ Z_j e_j acting on raw coefficients.
    pub fn mul_complex_vector_raw(&self, z: &DVector<C64>, psi: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(psi.len());
        for (zi, g) in z.iter().zip(&self.generators) {
            if *zi != ZERO {
                out += g.apply(psi) * *zi;
            }
        }
        out
    }

    pub fn mul_vector(&self, x: &DVector<f64>, psi: &Spinor) -> Result<Spinor> {
        self.check_len(x.len())?;
        self.check_spinor(psi)?;
        Ok(Spinor {
            space: psi.space,
            coeffs: self.mul_vector_raw(x, &psi.coeffs),
        })
    }

    /// ω·ψ = Σ_{i₁<…<i_k} ω_{i₁…i_k} e_{i₁}⋯e_{i_k}·ψ on raw coefficients.
    pub fn mul_form_raw(&self, form: &Form, psi: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(psi.len());
        for (idx, w) in form.increasing() {
            if w != 0.0 {
                out += self.product(&idx).apply(psi) * C64::from(w);
            }
        }
        out
    }

    pub fn mul_form(&self, form: &Form, psi: &Spinor) -> Result<Spinor> {
        self.check_len(form.n())?;
        self.check_spinor(psi)?;
        Ok(Spinor {
            space: psi.space,
            coeffs: self.mul_form_raw(form, &psi.coeffs),
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: len,
            });
        }
        Ok(())
    }

    fn check_spinor(&self, psi: &Spinor) -> Result<()> {
        if psi.space.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: psi.space.n(),
            });
        }
        Ok(())
    }
}

/// x·ψ for a real vector x.
pub fn clifford_mul_vector(x: &DVector<f64>, psi: &Spinor) -> Result<Spinor> {
    Clifford::new(psi.space.n()).mul_vector(x, psi)
}

/// ω·ψ for an antisymmetric form ω (increasing components only, no 1/k!).
pub fn clifford_mul_form(form: &Form, psi: &Spinor) -> Result<Spinor> {
    Clifford::new(psi.space.n()).mul_form(form, psi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spinor {
    space: SpinorSpace,
    coeffs: DVector<C64>,
}

impl Spinor {
    pub fn new(space: SpinorSpace, coeffs: DVector<C64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Spinor { space, coeffs })
    }

    pub fn zeros(n: usize) -> Self {
        let space = SpinorSpace::new(n);
        Spinor {
            space,
            coeffs: DVector::zeros(space.dim()),
        }
    }

    /// The basis spinor `u_{ε₁…ε_k}`.
    pub fn basis(n: usize, eps: &[Sign]) -> Result<Self> {
        let space = SpinorSpace::new(n);
        if eps.len() != space.factors() {
            return Err(Error::DimensionMismatch {
                expected: space.factors(),
                got: eps.len(),
            });
        }
        let mut c = DVector::zeros(space.dim());
        c[multi_index_position(eps)] = ONE;
        Ok(Spinor {
            space,
            coeffs: from_u_basis(&c),
        })
    }

    /// Builds a spinor from coefficients in the `u_I` basis.
    pub fn from_u_coefficients(n: usize, coeffs: DVector<C64>) -> Result<Self> {
        let space = SpinorSpace::new(n);
        Spinor::new(space, coeffs).map(|s| Spinor {
            space,
            coeffs: from_u_basis(&s.coeffs),
        })
    }

    pub fn space(&self) -> SpinorSpace {
        self.space
    }

    pub fn coeffs(&self) -> &DVector<C64> {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> DVector<C64> {
        self.coeffs
    }

    /// Coefficients `⟨ψ, u_I⟩` ordered by the lexicographic multi-index.
    pub fn u_coefficients(&self) -> DVector<C64> {
        to_u_basis(&self.coeffs)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn scale(&self, z: C64) -> Spinor {
        Spinor {
            space: self.space,
            coeffs: &self.coeffs * z,
        }
    }

    pub fn add(&self, other: &Spinor) -> Result<Spinor> {
        hermitian_inner(self, other)?;
        Ok(Spinor {
            space: self.space,
            coeffs: &self.coeffs + &other.coeffs,
        })
    }
}

/// Converts standard-basis coefficients to `u_I`-basis coefficients.
pub fn to_u_basis(v: &DVector<C64>) -> DVector<C64> {
    let k = v.len().trailing_zeros() as usize;
    StructuredOperator::new(ONE, vec![blocks::u_basis().adjoint(); k]).apply(v)
}

pub fn from_u_basis(v: &DVector<C64>) -> DVector<C64> {
    let k = v.len().trailing_zeros() as usize;
    StructuredOperator::new(ONE, vec![blocks::u_basis(); k]).apply(v)
}

/// `⟨a, b⟩ = Σ a_i conj(b_i)`: linear in the first slot, antilinear in the second.
pub fn inner_raw(a: &DVector<C64>, b: &DVector<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn hermitian_inner(a: &Spinor, b: &Spinor) -> Result<C64> {
    if a.space != b.space {
        return Err(Error::DimensionMismatch {
            expected: a.space.n(),
            got: b.space.n(),
        });
    }
    Ok(inner_raw(&a.coeffs, &b.coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Real,
    Quaternionic,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureKind::Real => write!(f, "real"),
            StructureKind::Quaternionic => write!(f, "quaternionic"),
        }
    }
}

/// Antilinear map `ψ ↦ conj_op(ψ̄)`.
#[derive(Debug, Clone)]
pub struct RealStructure {
    pub n: usize,
    pub kind: StructureKind,
    pub conj_op: StructuredOperator,
}

impl RealStructure {
    pub fn apply_raw(&self, psi: &DVector<C64>) -> DVector<C64> {
        self.conj_op.apply(&psi.map(|z| z.conj()))
    }

    pub fn apply(&self, psi: &Spinor) -> Result<Spinor> {
        if psi.space.n() / 2 != self.n / 2 {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: psi.space.n(),
            });
        }
        Ok(Spinor {
            space: psi.space,
            coeffs: self.apply_raw(&psi.coeffs),
        })
    }

    /// Expected value of γ∘γ: +1 real, −1 quaternionic.
    pub fn square_sign(&self) -> f64 {
        match self.kind {
            StructureKind::Real => 1.0,
            StructureKind::Quaternionic => -1.0,
        }
    }
}

/// γ_n. The mod-8 table reduces to the alternating string α⊗β⊗α⊗… of length
/// ⌊n/2⌋; the kind is read off the residue.
pub fn gamma_structure(n: usize) -> Result<RealStructure> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "γ_n requires n ≥ 2"));
    }
    Ok(gamma_unchecked(n))
}

/// γ_n including the trivial conjugation on Δ_0 = Δ_1 = C.
pub(crate) fn gamma_unchecked(n: usize) -> RealStructure {
    let k = n / 2;
    let factors = (0..k)
        .map(|p| if p % 2 == 0 { blocks::alpha() } else { blocks::beta() })
        .collect();
    let kind = match n % 8 {
        0 | 1 | 6 | 7 => StructureKind::Real,
        _ => StructureKind::Quaternionic,
    };
    RealStructure {
        n,
        kind,
        conj_op: StructuredOperator::new(ONE, factors),
    }
}

#[derive(Serialize, Deserialize)]
struct SpinorJson {
    n: usize,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for Spinor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpinorJson {
            n: self.space.n(),
            coeffs: self.u_coefficients().iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spinor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SpinorJson::deserialize(d)?;
        let c = DVector::from_iterator(raw.coeffs.len(), raw.coeffs.iter().map(|p| C64::new(p[0], p[1])));
        Spinor::from_u_coefficients(raw.n, c).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CliffordResiduals {
    /// `max ‖e_ie_j + e_je_i + 2δ_ij‖`.
    pub anticommutator: f64,
    /// `max ‖e_i†e_i − Id‖`.
    pub unitarity: f64,
    /// `max ‖e_i† + e_i‖`.
    pub skew_hermitian: f64,
}

impl CliffordResiduals {
    pub fn max(&self) -> f64 {
        self.anticommutator.max(self.unitarity).max(self.skew_hermitian)
    }
}

/// Dense check of the defining relations of κ_n.
pub fn clifford_residuals(n: usize) -> CliffordResiduals {
    let c = Clifford::new(n);
    let d = c.dim();
    let dense: Vec<_> = c.generators().iter().map(|g| g.to_dense()).collect();
    let id = DMatrix::<C64>::identity(d, d);
    let mut out = CliffordResiduals {
        anticommutator: 0.0,
        unitarity: 0.0,
        skew_hermitian: 0.0,
    };
    for (i, a) in dense.iter().enumerate() {
        out.unitarity = out.unitarity.max(max_abs(&(a.adjoint() * a - &id)));
        out.skew_hermitian = out.skew_hermitian.max(max_abs(&(a.adjoint() + a)));
        for (j, b) in dense.iter().enumerate().skip(i) {
            let mut anti = a * b + b * a;
            if i == j {
                anti += &id * C64::from(2.0);
            }
            out.anticommutator = out.anticommutator.max(max_abs(&anti));
        }
    }
    out
}

impl RealStructure {
    /// `max ‖γ(γ(ψ)) − sign·ψ‖` over the standard basis.
    pub fn square_residual(&self) -> f64 {
        let d = self.conj_op.dim();
        (0..d)
            .map(|b| {
                let mut e = DVector::zeros(d);
                e[b] = C64::from(1.0);
                let twice = self.apply_raw(&self.apply_raw(&e));
                max_abs_vec(&(twice - e * C64::from(self.square_sign())))
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn close(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) -> bool {
        max_abs(&(a - b)) < tol
    }

    fn basis_vec(n: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    #[test]
    fn e1_in_dimension_two_is_g1() {
        let e1 = generator(2, 0).unwrap().to_dense();
        let g1 = DMatrix::from_row_slice(2, 2, &[I, ZERO, ZERO, -I]);
        assert!(close(&e1, &g1, 1e-300));
    }

    #[test]
    fn last_generator_in_dimension_three_is_i_t() {
        let e3 = generator(3, 2).unwrap();
        assert_eq!(e3.factors.len(), 1);
        let want = DMatrix::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]);
        assert!(close(&e3.to_dense(), &want, 1e-15));
    }

    #[test]
    fn dimension_one_generator_is_scalar_i() {
        let e1 = generator(1, 0).unwrap();
        assert!(e1.factors.is_empty());
        assert_eq!(e1.to_dense()[(0, 0)], I);
        assert!(Clifford::new(0).generators().is_empty());
        assert_eq!(SpinorSpace::new(0).dim(), 1);
        assert_eq!(SpinorSpace::new(1).dim(), 1);
    }

    #[test]
    fn out_of_range_generator() {
        assert_eq!(
            generator(4, 4),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        );
    }

    #[test]
    fn relations_small_dims() {
        for n in 1..=7 {
            let c = Clifford::new(n);
            let d = c.dim();
            for i in 0..n {
                for j in 0..n {
                    let a = c.generator(i).to_dense();
                    let b = c.generator(j).to_dense();
                    let mut anti = &a * &b + &b * &a;
                    if i == j {
                        anti += DMatrix::identity(d, d) * C64::from(2.0);
                    }
                    assert!(max_abs(&anti) < 1e-12, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn structured_apply_matches_dense() {
        let c = Clifford::new(6);
        let psi = DVector::from_fn(8, |i, _| C64::new(i as f64 - 3.0, 0.5 * i as f64));
        for g in c.generators() {
            let dense = g.to_dense() * &psi;
            assert!((g.apply(&psi) - dense).norm() < 1e-14);
        }
        let p = c.product(&[0, 3, 4]);
        let dense = c.generator(0).to_dense() * c.generator(3).to_dense() * c.generator(4).to_dense();
        assert!(close(&p.to_dense(), &dense, 1e-14));
    }

    #[test]
    fn e1_on_u_plus_in_dimension_two() {
        let up = Spinor::basis(2, &[Sign::Plus]).unwrap();
        let um = Spinor::basis(2, &[Sign::Minus]).unwrap();
        let out = clifford_mul_vector(&basis_vec(2, 0), &up).unwrap();
        assert!((out.coeffs() - um.coeffs() * I).norm() < 1e-15);
        let twice = clifford_mul_vector(&basis_vec(2, 0), &out).unwrap();
        assert!((twice.coeffs() + up.coeffs()).norm() < 1e-15);
        let zero = clifford_mul_vector(&DVector::zeros(2), &up).unwrap();
        assert_eq!(zero.norm(), 0.0);
    }

    #[test]
    fn mul_vector_dimension_mismatch() {
        let up = Spinor::zeros(4);
        assert!(matches!(
            clifford_mul_vector(&DVector::zeros(3), &up),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn form_e1_e2_acts_as_product() {
        let psi = Spinor::new(
            SpinorSpace::new(4),
            DVector::from_fn(4, |i, _| C64::new(1.0 + i as f64, -(i as f64))),
        )
        .unwrap();
        let w = Form::from(&crate::form::SkewForm::wedge(4, 0, 1));
        let got = clifford_mul_form(&w, &psi).unwrap();
        let c = Clifford::new(4);
        let want = c.product(&[0, 1]).apply(psi.coeffs());
        assert!((got.coeffs() - want).norm() < 1e-14);
        let zero = clifford_mul_form(&Form::from(&crate::form::SkewForm::zeros(4)), &psi).unwrap();
        assert_eq!(zero.norm(), 0.0);
    }

    #[test]
    fn u_basis_orthonormal() {
        let up = Spinor::basis(2, &[Sign::Plus]).unwrap();
        let um = Spinor::basis(2, &[Sign::Minus]).unwrap();
        assert!(hermitian_inner(&up, &um).unwrap().norm() < 1e-16);
        assert!((hermitian_inner(&up, &up).unwrap() - ONE).norm() < 1e-15);
        for eps in multi_indices(3) {
            let u = Spinor::basis(6, &eps).unwrap();
            let c = u.u_coefficients();
            assert!((c[multi_index_position(&eps)] - ONE).norm() < 1e-14);
            assert!((c.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_two_on_u_plus() {
        let g = gamma_structure(2).unwrap();
        assert_eq!(g.kind, StructureKind::Quaternionic);
        let up = Spinor::basis(2, &[Sign::Plus]).unwrap();
        let um = Spinor::basis(2, &[Sign::Minus]).unwrap();
        let out = g.apply(&up).unwrap();
        assert!((out.coeffs() - um.coeffs() * (-I)).norm() < 1e-15);
        let twice = g.apply(&out).unwrap();
        assert!((twice.coeffs() + up.coeffs()).norm() < 1e-15);
    }

    #[test]
    fn clifford_residuals_up_to_twelve() {
        for n in 1..=12 {
            assert!(clifford_residuals(n).max() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn gamma_squares_exactly() {
        for n in 2..=10 {
            let g = gamma_structure(n).unwrap();
            assert_eq!(g.square_residual(), 0.0, "n={n}");
        }
    }

    #[test]
    fn gamma_kinds_follow_table() {
        let real = [6, 7, 8, 9, 14, 15, 16, 17];
        for n in 2..=17 {
            let g = gamma_structure(n).unwrap();
            let want = if real.contains(&n) {
                StructureKind::Real
            } else {
                StructureKind::Quaternionic
            };
            assert_eq!(g.kind, want, "n={n}");
        }
        assert!(gamma_structure(1).is_err());
    }

    #[test]
    fn serialization_uses_u_basis() {
        let up = Spinor::basis(4, &[Sign::Minus, Sign::Plus]).unwrap();
        let json = serde_json::to_value(&up).unwrap();
        assert_eq!(json["n"], 4);
        let coeffs = json["coeffs"].as_array().unwrap();
        assert_eq!(coeffs.len(), 4);
        assert!((coeffs[2][0].as_f64().unwrap() - 1.0).abs() < 1e-14);
        let back: Spinor = serde_json::from_value(json).unwrap();
        assert!((back.coeffs() - up.coeffs()).norm() < 1e-14);
    }
}
