//! Real antisymmetric forms on R^n.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Antisymmetric real n×n array, `ω(e_i, e_j) = self[(i, j)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SkewForm(DMatrix<f64>);

impl SkewForm {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn zeros(n: usize) -> Self {
        SkewForm(DMatrix::zeros(n, n))
    }

    /// Accepts `m` when its symmetric part is below [`Self::SYMMETRY_TOL`].
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let sym = (&m + m.transpose()).abs().max() / 2.0;
        if sym > Self::SYMMETRY_TOL {
            return Err(Error::NotAntisymmetric(sym));
        }
        Ok(SkewForm(m))
    }

    /// Antisymmetric part of an arbitrary square matrix.
    pub fn skew_part(m: &DMatrix<f64>) -> Self {
        SkewForm((m - m.transpose()) * 0.5)
    }

    /// `e_a ∧ e_b` (0-based indices), i.e. entry (a, b) = 1, (b, a) = −1.
    pub fn wedge(n: usize, a: usize, b: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        if a != b {
            m[(a, b)] = 1.0;
            m[(b, a)] = -1.0;
        }
        SkewForm(m)
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.0 * y)[(0, 0)]
    }

    /// `X ⌟ ω` dualized to a vector: `Σ_j ω(X, e_j) e_j`.
    pub fn contract(&self, x: &DVector<f64>) -> DVector<f64> {
        self.0.transpose() * x
    }

    /// Skew endomorphism `X ↦ (X ⌟ ω)^♯`, with matrix entries `E[j][i] = ω(e_i, e_j)`.
    pub fn endomorphism(&self) -> DMatrix<f64> {
        self.0.transpose()
    }

    pub fn scale(&self, s: f64) -> Self {
        SkewForm(&self.0 * s)
    }

    pub fn add(&self, other: &SkewForm) -> Self {
        SkewForm(&self.0 + &other.0)
    }

    /// Strictly increasing components `(i, j, ω_ij)` with `i < j`.
    pub fn increasing(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.0[(i, j)])))
    }

    /// `⟨ω, σ⟩₀ = Σ_{i<j} ω_ij σ_ij`.
    pub fn pairing(&self, other: &SkewForm) -> f64 {
        self.increasing()
            .map(|(i, j, w)| w * other.0[(i, j)])
            .sum()
    }
}

impl TryFrom<Vec<Vec<f64>>> for SkewForm {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        SkewForm::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }
}

impl From<SkewForm> for Vec<Vec<f64>> {
    fn from(f: SkewForm) -> Self {
        let n = f.n();
        (0..n).map(|i| (0..n).map(|j| f.0[(i, j)]).collect()).collect()
    }
}

/// Degree-k real form stored as a dense `n^k` array (row-major in the index
/// tuple).
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    n: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl Form {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    /// Validates full antisymmetry: the value must flip sign under every
    /// adjacent transposition of indices.
    pub fn new(n: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let expected = n.pow(degree as u32);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        let form = Form { n, degree, coeffs };
        let resid = form.symmetric_residual();
        if resid > Self::SYMMETRY_TOL {
            return Err(Error::NotAntisymmetric(resid));
        }
        Ok(form)
    }

    pub fn from_fn(n: usize, degree: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        let total = n.pow(degree as u32);
        let coeffs = (0..total).map(|flat| f(&unflatten(flat, n, degree))).collect();
        Form::new(n, degree, coeffs)
    }

    pub fn scalar(n: usize, value: f64) -> Self {
        Form {
            n,
            degree: 0,
            coeffs: vec![value],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.coeffs[flatten(idx, self.n)]
    }

    /// Largest `|ω(I) + ω(I with positions p, p+1 swapped)| / 2`.
    pub fn symmetric_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for flat in 0..self.coeffs.len() {
            let idx = unflatten(flat, self.n, self.degree);
            for p in 0..self.degree.saturating_sub(1) {
                let mut sw = idx.clone();
                sw.swap(p, p + 1);
                let s = (self.coeffs[flat] + self.coeffs[flatten(&sw, self.n)]).abs() / 2.0;
                worst = worst.max(s);
            }
        }
        worst
    }

    /// All strictly increasing multi-indices with their coefficients
    /// (including zeros).
    pub fn increasing(&self) -> Vec<(Vec<usize>, f64)> {
        increasing_indices(self.n, self.degree)
            .into_iter()
            .map(|idx| {
                let v = self.get(&idx);
                (idx, v)
            })
            .collect()
    }

    /// Every index tuple with its coefficient.
    pub fn all_components(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        (0..self.coeffs.len()).map(move |flat| (unflatten(flat, self.n, self.degree), self.coeffs[flat]))
    }
}

impl From<&SkewForm> for Form {
    fn from(f: &SkewForm) -> Self {
        let n = f.n();
        Form {
            n,
            degree: 2,
            coeffs: (0..n * n).map(|k| f.0[(k / n, k % n)]).collect(),
        }
    }
}

/// Strictly increasing k-tuples from `0..n`, lexicographic.
pub fn increasing_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn flatten(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

fn unflatten(mut flat: usize, n: usize, k: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    for p in (0..k).rev() {
        idx[p] = flat % n;
        flat /= n;
    }
    idx
}
