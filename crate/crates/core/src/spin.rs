//! Spin(n) as products of unit vectors, the covering map to SO(n), and the
//! twisted representation of Spin^{c,r}(n) on Σ_r ⊗ Δ_n.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::clifford::{
    from_u_basis, multi_indices, Clifford, RealStructure, Sign, StructuredOperator,
};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, max_abs_vec, unitarity_residual};
use crate::C64;

/// Phase `c` in the complex volume element `ω = c^{r/2} κ(f₁)⋯κ(f_r)`.
///
/// With the Kronecker table each pair `f_{2j-1}f_{2j}` acts as `g₁g₂ = diag(i, −i)`
/// in the `u_±` basis, so `c = −i` makes `ω u_I = (Π ε_j) u_I` and places
/// `u_{+1,…,+1}` in the `+1` eigenspace Δ_r⁺.
pub const CHIRALITY_PHASE: C64 = C64::new(0.0, -1.0);

const UNIT_TOL: f64 = 1e-12;

/// `sign · x₁x₂⋯x_{2l}` with unit vectors `x_j ∈ R^n`.
///
/// The explicit sign lets Spin(0) = Spin(1) = {±1} be represented even though
/// R^0 has no unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinElement {
    n: usize,
    sign: f64,
    factors: Vec<DVector<f64>>,
}

impl SpinElement {
    pub fn new(n: usize, factors: Vec<DVector<f64>>) -> Result<Self> {
        if factors.len() % 2 != 0 {
            return Err(Error::OddFactorCount(factors.len()));
        }
        for (index, x) in factors.iter().enumerate() {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
            let norm = x.norm();
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::NonUnitFactor { index, norm });
            }
        }
        Ok(SpinElement {
            n,
            sign: 1.0,
            factors,
        })
    }

    pub fn identity(n: usize) -> Self {
        SpinElement {
            n,
            sign: 1.0,
            factors: Vec::new(),
        }
    }

    /// Product of `pairs` pairs of random unit vectors.
    pub fn random<R: Rng>(n: usize, pairs: usize, rng: &mut R) -> Self {
        if n == 0 {
            return SpinElement::identity(0);
        }
        let factors = (0..2 * pairs)
            .map(|_| loop {
                let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
                let norm = v.norm();
                if norm > 1e-3 {
                    break v / norm;
                }
            })
            .collect();
        SpinElement {
            n,
            sign: 1.0,
            factors,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn factors(&self) -> &[DVector<f64>] {
        &self.factors
    }

    pub fn negated(&self) -> Self {
        SpinElement {
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// Clifford product `self · other`.
    pub fn compose(&self, other: &SpinElement) -> Self {
        assert_eq!(self.n, other.n);
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        SpinElement {
            n: self.n,
            sign: self.sign * other.sign,
            factors,
        }
    }

    /// `(x₁⋯x_{2l})⁻¹ = x_{2l}⋯x₁` for an even number of unit vectors.
    pub fn inverse(&self) -> Self {
        SpinElement {
            n: self.n,
            sign: self.sign,
            factors: self.factors.iter().rev().cloned().collect(),
        }
    }
}

/// κ_n(g) as a dense unitary matrix on Δ_n.
pub fn rep_operator(g: &SpinElement) -> DMatrix<C64> {
    let cl = Clifford::new(g.n);
    rep_operator_with(&cl, g)
}

pub(crate) fn rep_operator_with(cl: &Clifford, g: &SpinElement) -> DMatrix<C64> {
    let d = cl.dim();
    let mut m = DMatrix::<C64>::identity(d, d) * C64::from(g.sign);
    for x in &g.factors {
        m *= cl.vector_operator(x).expect("factor length checked");
    }
    m
}

const EXTRACTION_TOL: f64 = 1e-9;

/// λ_n(g): the matrix of `x ↦ g x g⁻¹`, read off with the trace pairing
/// `tr(κ(e_i)κ(e_j)) = −δ_ij 2^{⌊n/2⌋}`.
pub fn vector_rep(g: &SpinElement) -> Result<DMatrix<f64>> {
    let cl = Clifford::new(g.n);
    vector_rep_with(&cl, g)
}

pub(crate) fn vector_rep_with(cl: &Clifford, g: &SpinElement) -> Result<DMatrix<f64>> {
    let n = g.n;
    let u = rep_operator_with(cl, g);
    let u_inv = u.adjoint();
    let dense: Vec<DMatrix<C64>> = cl.generators().iter().map(|e| e.to_dense()).collect();
    let dim = C64::from(cl.dim() as f64);
    let mut out = DMatrix::zeros(n, n);
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let image = &u * &dense[j] * &u_inv;
        let mut recon = DMatrix::<C64>::zeros(cl.dim(), cl.dim());
        for i in 0..n {
            let c = -(&dense[i] * &image).trace() / dim;
            out[(i, j)] = c.re;
            worst = worst.max(c.im.abs());
            recon += &dense[i] * C64::from(c.re);
        }
        worst = worst.max(max_abs(&(image - recon)));
    }
    if worst > EXTRACTION_TOL {
        return Err(Error::Residual {
            what: "vector representation extraction",
            residual: worst,
        });
    }
    Ok(out)
}

/// `E_ij = e_i* ⊗ e_j − e_j* ⊗ e_i`, i.e. `E_ij(e_i) = e_j`, `E_ij(e_j) = −e_i`.
pub fn elementary_skew(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(j, i)] += 1.0;
    m[(i, j)] -= 1.0;
    m
}

/// `cos t + sin t · e_i e_j` written as the product `e_i · (−cos t e_i + sin t e_j)`.
pub fn one_parameter_element(n: usize, i: usize, j: usize, t: f64) -> SpinElement {
    let mut a = DVector::zeros(n);
    a[i] = 1.0;
    let mut b = DVector::zeros(n);
    b[i] = -t.cos();
    b[j] = t.sin();
    SpinElement::new(n, vec![a, b]).expect("unit factors")
}

/// ‖d/dt|₀ λ_n(cos t + sin t e_ie_j) − 2E_ij‖_max by central differences.
pub fn lie_generator_check(n: usize, i: usize, j: usize, step: f64) -> f64 {
    let cl = Clifford::new(n);
    let plus = vector_rep_with(&cl, &one_parameter_element(n, i, j, step)).expect("valid element");
    let minus = vector_rep_with(&cl, &one_parameter_element(n, i, j, -step)).expect("valid element");
    let deriv = (plus - minus) / (2.0 * step);
    (deriv - elementary_skew(n, i, j) * 2.0).abs().max()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistedSpinorSpace {
    pub n: usize,
    pub r: usize,
}

impl TwistedSpinorSpace {
    pub fn new(n: usize, r: usize) -> Self {
        TwistedSpinorSpace { n, r }
    }

    /// dim Σ_r = dim Δ_r (C for r ≤ 1).
    pub fn sigma_dim(&self) -> usize {
        sigma_dim(self.r)
    }

    pub fn spin_dim(&self) -> usize {
        1 << (self.n / 2)
    }

    pub fn total_dim(&self) -> usize {
        self.sigma_dim() * self.spin_dim()
    }
}

/// The twist factor is the full Δ_r for every r.
///
/// Restricting to Δ_r⁺ for even r leaves a Spin(r)-invariant tensor but makes
/// `κ(f₁⋯f_r)` a scalar on Σ_r: for r = 2 then `⟨κ(f₁f₂)φ, φ⟩ = ±i` for every φ,
/// and for r = 4 the forms η_12 and η_34 coincide up to sign. Neither branch
/// could host a partially pure spinor, see [`even_parity_indices`].
pub fn sigma_dim(r: usize) -> usize {
    1 << (r / 2)
}

/// Multi-indices `I` labelling the basis `v_I` of Σ_r, lexicographic.
pub fn sigma_indices(r: usize) -> Vec<Vec<Sign>> {
    multi_indices(r / 2)
}

/// Indices with an even number of `−1`: the `v_I` spanning Δ_r⁺ for even r.
pub fn even_parity_indices(r: usize) -> Vec<Vec<Sign>> {
    multi_indices(r / 2)
        .into_iter()
        .filter(|eps| eps.iter().filter(|s| **s == Sign::Minus).count() % 2 == 0)
        .collect()
}

/// κ(f₁)⋯κ(f_r) scaled by `CHIRALITY_PHASE^{r/2}`.
pub fn volume_element(r: usize) -> Result<StructuredOperator> {
    if r < 2 || r % 2 != 0 {
        return Err(Error::InvalidDimension(r, "complex volume element needs even r ≥ 2"));
    }
    let cl = Clifford::new(r);
    let idx: Vec<usize> = (0..r).collect();
    Ok(cl.product(&idx).scaled(CHIRALITY_PHASE.powu((r / 2) as u32)))
}

/// Orthogonal projector onto Δ_r⁺.
pub fn half_spinor_projector(r: usize) -> Result<DMatrix<C64>> {
    let w = volume_element(r)?.to_dense();
    let d = w.nrows();
    Ok((DMatrix::identity(d, d) + w) * C64::from(0.5))
}

/// The twist factor Σ_r ⊆ Δ_r with its orthonormal basis `v_I`.
#[derive(Debug, Clone)]
pub struct TwistFactor {
    r: usize,
    clifford: Clifford,
    indices: Vec<Vec<Sign>>,
    /// Columns are `v_I` in standard coordinates of Δ_r.
    embedding: DMatrix<C64>,
    pairs: Vec<((usize, usize), DMatrix<C64>)>,
}

impl TwistFactor {
    pub fn new(r: usize) -> Self {
        let clifford = Clifford::new(r);
        let indices = sigma_indices(r);
        let full = 1 << (r / 2);
        let mut embedding = DMatrix::zeros(full, indices.len());
        for (c, eps) in indices.iter().enumerate() {
            let mut e = DVector::zeros(full);
            e[crate::clifford::multi_index_position(eps)] = C64::from(1.0);
            embedding.set_column(c, &from_u_basis(&e));
        }
        let mut out = TwistFactor {
            r,
            clifford,
            indices,
            embedding,
            pairs: Vec::new(),
        };
        let mut pairs = Vec::new();
        for k in 0..r {
            for l in k + 1..r {
                pairs.push(((k, l), out.restrict(&out.clifford.product(&[k, l]).to_dense())));
            }
        }
        out.pairs = pairs;
        out
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[Vec<Sign>] {
        &self.indices
    }

    pub fn embedding(&self) -> &DMatrix<C64> {
        &self.embedding
    }

    pub fn clifford(&self) -> &Clifford {
        &self.clifford
    }

    /// `B† M B` for an operator `M` on Δ_r that preserves Σ_r.
    pub fn restrict(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        self.embedding.adjoint() * m * &self.embedding
    }

    /// κ_{r*}(f_k f_l) on Σ_r, any `k, l < r`.
    pub fn pair(&self, k: usize, l: usize) -> DMatrix<C64> {
        assert!(k < self.r && l < self.r, "twist index out of range");
        if k < l {
            if let Some((_, m)) = self.pairs.iter().find(|(p, _)| *p == (k, l)) {
                return m.clone();
            }
        }
        self.product(&[k, l])
    }

    /// κ(f_{i₁}⋯f_{i_p}) restricted to Σ_r (p even when r is even).
    pub fn product(&self, indices: &[usize]) -> DMatrix<C64> {
        self.restrict(&self.clifford.product(indices).to_dense())
    }

    /// Twist pairs `(k, l)` with `k < l` in lexicographic order.
    pub fn pair_list(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|(p, _)| *p).collect()
    }

    /// κ_r(h) on Σ_r.
    pub fn rep(&self, h: &SpinElement) -> DMatrix<C64> {
        self.restrict(&rep_operator_with(&self.clifford, h))
    }
}

/// `[g, [h, z]] ∈ Spin^{c,r}(n)`.
#[derive(Debug, Clone)]
pub struct SpinCRElement {
    pub g: SpinElement,
    pub h: SpinElement,
    pub z: C64,
}

impl SpinCRElement {
    pub fn identity(n: usize, r: usize) -> Self {
        SpinCRElement {
            g: SpinElement::identity(n),
            h: SpinElement::identity(r),
            z: C64::from(1.0),
        }
    }

    pub fn random<R: Rng>(n: usize, r: usize, pairs: usize, rng: &mut R) -> Self {
        let g = SpinElement::random(n, pairs, rng);
        let h = SpinElement::random(r, pairs, rng);
        let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        SpinCRElement {
            g,
            h,
            z: C64::from_polar(1.0, t),
        }
    }

    /// The other representative `(−g, −h, z)` of the same class.
    pub fn flipped(&self) -> Self {
        SpinCRElement {
            g: self.g.negated(),
            h: self.h.negated(),
            z: self.z,
        }
    }
}

/// `z κ_r(h) ⊗ κ_n(g)` on Σ_r ⊗ Δ_n, twist index major.
pub fn twisted_rep(elem: &SpinCRElement, space: &TwistedSpinorSpace) -> Result<DMatrix<C64>> {
    if elem.g.n != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            got: elem.g.n,
        });
    }
    if elem.h.n != space.r {
        return Err(Error::DimensionMismatch {
            expected: space.r,
            got: elem.h.n,
        });
    }
    let twist = TwistFactor::new(space.r);
    let h = twist.rep(&elem.h);
    let g = rep_operator(&elem.g);
    Ok(h.kronecker(&g) * elem.z)
}

/// ‖U†U − I‖ for the twisted representation of `elem`.
pub fn twisted_unitarity(elem: &SpinCRElement, space: &TwistedSpinorSpace) -> Result<f64> {
    Ok(unitarity_residual(&twisted_rep(elem, space)?))
}

/// `max ‖γ(κ(g)ψ) − κ(g)γ(ψ)‖` over the standard basis.
pub fn gamma_equivariance_residual(gamma: &RealStructure, g: &SpinElement) -> f64 {
    let k = rep_operator(g);
    let d = k.nrows();
    (0..d)
        .map(|b| {
            let mut e = DVector::zeros(d);
            e[b] = C64::from(1.0);
            let lhs = gamma.apply_raw(&(&k * &e));
            let rhs = &k * gamma.apply_raw(&e);
            max_abs_vec(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}
